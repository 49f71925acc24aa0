// Command-line front end: analyses, decoding sweeps, isometry checks,
// automorphism groups, concatenation, and the example gallery.
//
// Exit codes: 0 success, 1 computation failure (budget/tolerance),
// 2 input error.

#include "gkp/concat.hpp"
#include "gkp/decode.hpp"
#include "gkp/errors.hpp"
#include "gkp/io.hpp"
#include "gkp/svp.hpp"
#include "gkp/symmetry.hpp"
#include "gkp/theta.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace gkp;

namespace {

struct OutSink {
    std::string path; // empty = stdout
    std::ostringstream buf;

    void flush() {
        if (path.empty()) {
            std::cout << buf.str();
        } else {
            std::ofstream f(path);
            if (!f) throw InputError("cannot write to " + path);
            f << buf.str();
        }
    }
};

json type_json(const LatticeType &t) {
    json a = json::array();
    for (const auto &d : t.divisors) a.push_back(d.convert_to<long long>());
    return a;
}

std::vector<double> parse_list(const std::string &s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception &) {
            throw InputError("malformed numeric list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw InputError("empty numeric list");
    return out;
}

std::vector<double> parse_range(const std::string &s) {
    double lo, hi;
    int steps;
    char c1, c2;
    std::stringstream ss(s);
    if (!(ss >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' ||
        steps < 1)
        throw InputError("malformed range '" + s + "' (expected lo:hi:steps)");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i)
        out.push_back(steps == 1 ? lo
                                 : lo + (hi - lo) * i /
                                           static_cast<double>(steps - 1));
    return out;
}

int cmd_analyze(const std::string &code_spec, OutSink &sink) {
    GkpCode code = resolve_code(code_spec);
    json j;
    j["schema"] = "gkp-report/v1";
    j["command"] = "analyze";
    j["code_id"] = code_spec;
    j["n"] = code.n();
    j["type"] = type_json(code.sympl.type);
    j["det"] = code.lattice.covolume();
    j["k_order"] = code.k_order.convert_to<long long>();
    j["exponent"] = code.exponent;
    if (code.sympl.type.is_principal()) {
        j["warning"] = "trivial code: principal type, no logical subsystem";
    } else {
        SystoleReport sys = systole_report(code);
        j["ell"] = sys.ell;
        j["count"] = sys.count;
        j["lambda1_lattice"] = sys.lambda1_lattice;
        j["lambda1_dual"] = sys.lambda1_dual;
        json mins = json::array();
        for (const auto &m : sys.minimizer_dual_coords) {
            json v = json::array();
            for (long long c : m) v.push_back(c);
            mins.push_back(v);
        }
        j["minimizers"] = mins;
    }
    sink.buf << j.dump(2) << "\n";
    return 0;
}

int cmd_decode_sim(const std::string &code_spec, const std::string &decoder,
                   const std::string &method, const std::string &noise_kind,
                   const std::vector<double> &sigmas, long long samples,
                   std::uint64_t seed, int grid, int threads,
                   const std::string &csv_path, OutSink &sink) {
    GkpCode code = resolve_code(code_spec);
    std::ostringstream csv;
    csv << "code_id,decoder,noise,sigma,estimate,ci_low,ci_high,"
           "analytic_bound,leading_term,samples_or_grid,seed,status\n";
    bool any_error = false;
    for (double sigma : sigmas) {
        json j;
        j["schema"] = "gkp-report/v1";
        j["command"] = "decode-sim";
        j["code_id"] = code_spec;
        j["decoder"] = decoder;
        j["noise"] = noise_kind;
        if (noise_kind == "gaussian") j["sigma"] = sigma;
        try {
            NoiseModel noise = noise_kind == "uniform"
                                   ? NoiseModel::uniform()
                                   : NoiseModel::gaussian(sigma);
            DecoderReport rep =
                method == "quad"
                    ? robustness_quadrature(code, noise, grid, threads)
                    : robustness_mc(code, noise, decoder, samples, seed,
                                    threads);
            j["status"] = "ok";
            j["estimate"] = rep.estimate;
            j["ci_low"] = rep.ci_low;
            j["ci_high"] = rep.ci_high;
            if (rep.analytic_bound) j["analytic_bound"] = *rep.analytic_bound;
            if (rep.leading_term) j["leading_term"] = *rep.leading_term;
            j["samples_or_grid"] = rep.samples_or_grid;
            j["seed"] = seed;
            csv << code_spec << "," << decoder << "," << noise_kind << ","
                << (noise_kind == "gaussian" ? std::to_string(sigma) : "")
                << "," << rep.estimate << "," << rep.ci_low << ","
                << rep.ci_high << ","
                << (rep.analytic_bound ? std::to_string(*rep.analytic_bound)
                                       : "")
                << ","
                << (rep.leading_term ? std::to_string(*rep.leading_term) : "")
                << "," << rep.samples_or_grid << "," << seed << ",ok\n";
        } catch (const GkpError &e) {
            any_error = true;
            j["status"] = "error";
            j["error"] = e.what();
            csv << code_spec << "," << decoder << "," << noise_kind << ","
                << (noise_kind == "gaussian" ? std::to_string(sigma) : "")
                << ",,,,,,,," << "error\n";
        }
        sink.buf << j.dump() << "\n";
        if (noise_kind == "uniform") break; // σ-independent: one line
    }
    if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw InputError("cannot write to " + csv_path);
        f << csv.str();
    }
    return any_error ? 1 : 0;
}

int cmd_isometry(const std::string &code_spec, const std::vector<double> &betas,
                 int grid, OutSink &sink) {
    GkpCode code = resolve_code(code_spec);
    int g = grid > 0 ? grid : default_theta_grid(code.n());
    auto sweep = isometry_sweep(code, betas, g);
    json j;
    j["schema"] = "gkp-report/v1";
    j["command"] = "isometry";
    j["code_id"] = code_spec;
    j["grid"] = g;
    j["grid_converged"] = true; // theta_gram/envelope_gram throw otherwise
    json rows = json::array();
    for (auto [beta, dev] : sweep) {
        json r;
        r["beta"] = beta;
        r["c_beta"] = isometry_conformal_factor(code, beta);
        r["deviation"] = dev;
        rows.push_back(r);
    }
    j["sweep"] = rows;
    sink.buf << j.dump(2) << "\n";
    return 0;
}

int cmd_autgroup(const std::string &code_spec, OutSink &sink) {
    GkpCode code = resolve_code(code_spec);
    auto autos = passive_automorphisms(code);
    auto act = sp_k_image(code, autos);
    json j;
    j["schema"] = "gkp-report/v1";
    j["command"] = "autgroup";
    j["code_id"] = code_spec;
    j["order"] = static_cast<long long>(autos.size());
    j["image_order"] = act.image_order;
    j["kernel_order"] = act.kernel_order;
    sink.buf << j.dump(2) << "\n";
    return 0;
}

int cmd_concat(const std::string &code_spec, const std::string &stab_path,
               OutSink &sink) {
    GkpCode code = resolve_code(code_spec);
    StabilizerSpec spec = load_stabilizer_file(code, stab_path);
    IsogenyReport rep = concatenate(code, spec);
    json j;
    j["schema"] = "gkp-report/v1";
    j["command"] = "concat";
    j["code_id"] = code_spec;
    j["old_type"] = type_json(rep.old_type);
    j["new_type"] = type_json(rep.new_type);
    j["index"] = rep.index.convert_to<long long>();
    json kd = json::array();
    for (const auto &d : rep.kernel_divisors)
        kd.push_back(d.convert_to<long long>());
    j["kernel_divisors"] = kd;
    j["new_code"] = json::parse(code_to_json(rep.new_code));
    sink.buf << j.dump(2) << "\n";
    return 0;
}

int cmd_gallery(const std::string &action, const std::string &id,
                OutSink &sink) {
    if (action == "list") {
        json j;
        j["schema"] = "gkp-report/v1";
        j["command"] = "gallery";
        json entries = json::array();
        for (const auto &gid : gallery_ids()) {
            GalleryEntry e = gallery_entry(gid);
            json row;
            row["id"] = e.id;
            row["description"] = e.description;
            row["n"] = e.code.n();
            row["type"] = type_json(e.code.sympl.type);
            entries.push_back(row);
        }
        j["entries"] = entries;
        sink.buf << j.dump(2) << "\n";
        return 0;
    }
    if (action == "export") {
        GalleryEntry e = gallery_entry(id);
        sink.buf << code_to_json(e.code);
        return 0;
    }
    throw InputError("gallery action must be 'list' or 'export'");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"GKP codes as symplectically integral lattices: invariants, "
                 "theta functions, decoding, symmetries, concatenation"};
    app.require_subcommand(1);

    std::string code_spec, out_path, csv_path, stab_path;
    std::string decoder = "mld", method = "mc", noise_kind = "gaussian";
    std::string sigma_list, sigma_range, betas_list = "0.4,0.2,0.1";
    long long samples = 100000;
    std::uint64_t seed = 1;
    int grid = 2000, theta_grid = 0, threads = 1;
    std::string gallery_action, gallery_id;

    auto add_code = [&](CLI::App *c) {
        c->add_option("--code", code_spec, "code file path or gallery:<id>")
            ->required();
        c->add_option("--out", out_path, "write output to file");
    };

    CLI::App *an = app.add_subcommand("analyze", "algebraic and systolic invariants");
    add_code(an);

    CLI::App *ds = app.add_subcommand("decode-sim", "robustness/fragility sweeps");
    add_code(ds);
    ds->add_option("--decoder", decoder, "mld|med")
        ->check(CLI::IsMember({"mld", "med"}));
    ds->add_option("--method", method, "mc|quad")
        ->check(CLI::IsMember({"mc", "quad"}));
    ds->add_option("--noise", noise_kind, "gaussian|uniform")
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    ds->add_option("--sigma", sigma_list, "comma-separated sigmas");
    ds->add_option("--sigma-range", sigma_range, "lo:hi:steps");
    ds->add_option("--samples", samples, "Monte Carlo samples");
    ds->add_option("--seed", seed, "random seed");
    ds->add_option("--grid", grid, "quadrature grid per axis");
    ds->add_option("--threads", threads, "worker threads");
    ds->add_option("--csv", csv_path, "CSV mirror output path");

    CLI::App *iso = app.add_subcommand("isometry", "envelope isometry deviation sweep");
    add_code(iso);
    iso->add_option("--betas", betas_list, "comma-separated betas");
    iso->add_option("--grid", theta_grid, "theta quadrature grid per axis");

    CLI::App *ag = app.add_subcommand("autgroup", "passive automorphism group");
    add_code(ag);

    CLI::App *cc = app.add_subcommand("concat", "concatenate with a stabilizer");
    add_code(cc);
    cc->add_option("--stab", stab_path, "stabilizer file (gkp-stab/v1)")
        ->required();

    CLI::App *ga = app.add_subcommand("gallery", "list or export examples");
    ga->add_option("action", gallery_action, "list|export")->required();
    ga->add_option("id", gallery_id, "gallery id (for export)");
    ga->add_option("--out", out_path, "write output to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    OutSink sink;
    try {
        int rc = 0;
        if (an->parsed()) {
            sink.path = out_path;
            rc = cmd_analyze(code_spec, sink);
        } else if (ds->parsed()) {
            std::vector<double> sigmas;
            if (!sigma_list.empty()) sigmas = parse_list(sigma_list);
            if (!sigma_range.empty()) {
                auto r = parse_range(sigma_range);
                sigmas.insert(sigmas.end(), r.begin(), r.end());
            }
            if (sigmas.empty()) {
                if (noise_kind == "gaussian")
                    throw InputError("provide --sigma or --sigma-range");
                sigmas.push_back(0.0);
            }
            sink.path = out_path;
            rc = cmd_decode_sim(code_spec, decoder, method, noise_kind, sigmas,
                                samples, seed, grid, threads, csv_path, sink);
        } else if (iso->parsed()) {
            sink.path = out_path;
            rc = cmd_isometry(code_spec, parse_list(betas_list), theta_grid,
                              sink);
        } else if (ag->parsed()) {
            sink.path = out_path;
            rc = cmd_autgroup(code_spec, sink);
        } else if (cc->parsed()) {
            sink.path = out_path;
            rc = cmd_concat(code_spec, stab_path, sink);
        } else if (ga->parsed()) {
            sink.path = out_path;
            rc = cmd_gallery(gallery_action, gallery_id, sink);
        }
        sink.flush();
        return rc;
    } catch (const InputError &e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const GkpError &e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
