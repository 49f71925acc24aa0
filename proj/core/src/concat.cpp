#include "gkp/concat.hpp"

#include "gkp/errors.hpp"

#include <map>
#include <utility>

namespace gkp {

namespace {

long long axis_divisor(const GkpCode &code, int i) {
    const int n = code.n();
    return code.divisors[i < n ? i : i - n];
}

std::vector<long long> key_of(const PauliElement &p) {
    std::vector<long long> k(p.dual_coords.size());
    for (std::size_t i = 0; i < k.size(); ++i)
        k[i] = p.dual_coords[i].convert_to<long long>();
    return k;
}

// Closure of the generated group in reduced form; throws on a phase clash
// (two phases over the same coset means [0, α≠1] ∈ S, killing the
// eigenspace).
std::map<std::vector<long long>, Turn>
close_group(const GkpCode &code, const std::vector<PauliElement> &gens) {
    std::map<std::vector<long long>, Turn> seen;
    std::vector<PauliElement> queue;
    PauliElement id = pauli_identity(code);
    seen[key_of(id)] = id.alpha;
    queue.push_back(id);
    while (!queue.empty()) {
        PauliElement cur = queue.back();
        queue.pop_back();
        for (const auto &g : gens) {
            PauliElement nx = pauli_mul(code, cur, g);
            auto key = key_of(nx);
            auto it = seen.find(key);
            if (it == seen.end()) {
                if (seen.size() >= 1000000)
                    throw BudgetExceeded(
                        "stabilizer closure exceeds 10^6 elements");
                seen.emplace(key, nx.alpha);
                queue.push_back(nx);
            } else if (!(it->second == nx.alpha)) {
                throw InconsistentPhases(
                    "stabilizer phases are inconsistent: a nontrivial scalar "
                    "lies in the generated group");
            }
        }
    }
    return seen;
}

} // namespace

StabilizerSpec validate_stabilizer(const GkpCode &code,
                                   const StabilizerSpec &spec) {
    StabilizerSpec out;
    for (const auto &g : spec.generators) {
        if (g.dual_coords.size() != static_cast<std::size_t>(code.dim()))
            throw InputError("generator has wrong dimension");
        if (!pauli_check(code, g))
            throw NotPauli("generator fails the Pauli phase condition");
        out.generators.push_back(pauli_reduce(code, g));
    }
    for (std::size_t i = 0; i < out.generators.size(); ++i)
        for (std::size_t j = i + 1; j < out.generators.size(); ++j) {
            Rat e = dual_e(code, out.generators[i].dual_coords,
                           out.generators[j].dual_coords);
            if (boost::multiprecision::denominator(e) != 1)
                throw NotCommuting("generators have non-integral E pairing " +
                                   Turn(e).to_string());
        }
    close_group(code, out.generators); // throws InconsistentPhases on clash
    return out;
}

IsogenyReport concatenate(const GkpCode &code, const StabilizerSpec &raw) {
    StabilizerSpec spec = validate_stabilizer(code, raw);
    const int dim = code.dim();
    auto phases = close_group(code, spec.generators);

    // Λ_S in canonical dual coordinates: columns diag(D,D) (= Λ) plus the
    // generator coordinates.
    IMat stacked(dim, dim + static_cast<int>(spec.generators.size()));
    for (int i = 0; i < dim; ++i) stacked(i, i) = axis_divisor(code, i);
    for (std::size_t g = 0; g < spec.generators.size(); ++g)
        for (int i = 0; i < dim; ++i)
            stacked(i, dim + g) = spec.generators[g].dual_coords[i];
    IMat hs = hermite_column_basis(stacked);
    if (hs.cols() != static_cast<std::size_t>(dim))
        throw NumericalBreakdown("lattice sum is not full rank");

    // Kernel Λ_S/Λ ≅ Z^{2n} / (Hs⁻¹·diag(D,D))·Z^{2n}.
    QMat hsq = to_rational(hs);
    QMat hinv = inverse(hsq);
    IMat rel(dim, dim);
    BigInt index = 1;
    {
        QMat dmat(dim, dim);
        for (int i = 0; i < dim; ++i) dmat(i, i) = Rat(axis_divisor(code, i));
        QMat m = hinv * dmat;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                if (boost::multiprecision::denominator(m(i, j)) != 1)
                    throw NumericalBreakdown("Λ is not contained in Λ_S");
                rel(i, j) = boost::multiprecision::numerator(m(i, j));
            }
        index = det(rel);
        if (index < 0) index = -index;
    }

    IsogenyReport rep;
    rep.old_type = code.sympl.type;
    for (const BigInt &d : smith_divisors(rel))
        if (d != 1) rep.kernel_divisors.push_back(d);
    rep.index = index;

    // New code: ambient basis, plus ν_S on its generators. For a generator
    // with dual coordinates h = rc + δ (rc the reduced representative,
    // δ ∈ Λ), the stabilizer element over h has phase
    //   α_h = α_rc − ν(δ) − E(rc, δ)/2   (turns; inverse of pauli_reduce),
    // and ν_S(h) = α_h^{-1}.
    Eigen::MatrixXd new_basis(dim, dim);
    Semicharacter nu_s;
    const int n = code.n();
    for (int j = 0; j < dim; ++j) {
        Eigen::VectorXd hj(dim);
        std::vector<BigInt> h(dim), rc(dim), delta(dim), lam(dim);
        for (int i = 0; i < dim; ++i) {
            h[i] = hs(i, j);
            hj(i) = static_cast<double>(h[i].convert_to<long long>());
            BigInt d(axis_divisor(code, i));
            rc[i] = h[i] % d;
            if (rc[i] < 0) rc[i] += d;
            delta[i] = h[i] - rc[i];
            lam[i] = delta[i] / d;
        }
        new_basis.col(j) = code.dual_basis * hj;
        std::vector<long long> key(dim);
        for (int i = 0; i < dim; ++i) key[i] = rc[i].convert_to<long long>();
        auto it = phases.find(key);
        if (it == phases.end())
            throw NumericalBreakdown(
                "lattice-sum generator is not covered by the stabilizer");
        Turn alpha_h = it->second - semicharacter_eval_frob(code, lam) -
                       Turn(dual_e(code, rc, delta) / 2);
        nu_s.base_phases.push_back(-alpha_h);
    }
    (void)n;
    rep.new_code = make_code(lattice_from_basis(new_basis), nu_s);
    rep.new_type = rep.new_code.sympl.type;

    // Determinant bookkeeping: (Π new d)·index = Π old d.
    BigInt oldp = 1, newp = 1;
    for (const BigInt &d : rep.old_type.divisors) oldp *= d;
    for (const BigInt &d : rep.new_type.divisors) newp *= d;
    if (newp * rep.index != oldp)
        throw NumericalBreakdown("isogeny index bookkeeping failed");
    return rep;
}

} // namespace gkp
