#pragma once

// JSON input/output for the documented schemas (gkp-lattice/v1,
// gkp-period/v1, gkp-code/v1, gkp-stab/v1) and the built-in gallery of
// canonical examples. The API speaks JSON text so the public headers stay
// free of a JSON-library dependency.

#include "gkp/code.hpp"
#include "gkp/concat.hpp"

#include <string>
#include <vector>

namespace gkp {

struct GalleryEntry {
    std::string id;
    std::string description;
    GkpCode code;
};

// Parse a code from any supported schema (gkp-code/v1, gkp-lattice/v1 with
// the standard semicharacter, or gkp-period/v1). Throws InputError with a
// field diagnostic on schema violations.
GkpCode load_code_string(const std::string &json_text);
GkpCode load_code_file(const std::string &path);

// "gallery:<id>" or a file path.
GkpCode resolve_code(const std::string &spec);

StabilizerSpec load_stabilizer_string(const GkpCode &code,
                                      const std::string &json_text);
StabilizerSpec load_stabilizer_file(const GkpCode &code,
                                    const std::string &path);

// Schema-valid, byte-reproducible serializations (2-space indent, keys in
// fixed order, 17-significant-digit numbers).
std::string lattice_to_json(const GkpLattice &lat);
std::string code_to_json(const GkpCode &code);

std::vector<std::string> gallery_ids(); // includes the optional klein-quartic
GalleryEntry gallery_entry(const std::string &id);

} // namespace gkp
