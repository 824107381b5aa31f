#pragma once

#include <optional>

#include "tslab/complex.hpp"

namespace tslab {

// Extended integer for per-prime filtration cutoffs.
struct Cutoff {
    enum class Kind { neg_inf, finite, pos_inf };
    Kind kind = Kind::neg_inf;
    int value = 0;

    static Cutoff neg_inf() { return {Kind::neg_inf, 0}; }
    static Cutoff pos_inf() { return {Kind::pos_inf, 0}; }
    static Cutoff at(int n) { return {Kind::finite, n}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool admits(int n) const {  // n ≤ cutoff
        if (kind == Kind::pos_inf) return true;
        if (kind == Kind::neg_inf) return false;
        return n <= value;
    }
    bool operator==(const Cutoff& o) const {
        return kind == o.kind && (kind != Kind::finite || value == o.value);
    }
};

Cutoff min_cutoff(const Cutoff& a, const Cutoff& b);

// Per-prime cutoffs n_p; Φ(n) = {p : n ≤ n_p} is decreasing by construction.
struct ThomasonFiltration {
    CyclicRing ring;
    std::map<Int, Cutoff> cutoffs;  // one entry per prime of the ring

    bool contains(const Int& p, int n) const { return cutoffs.at(p).admits(n); }
    SpecSubset phi(int n) const;
    Cutoff divisor_cutoff(const Int& d) const;  // min over primes dividing d
    bool operator==(const ThomasonFiltration& o) const {
        return ring.modulus == o.ring.modulus && cutoffs == o.cutoffs;
    }
};

ThomasonFiltration make_filtration(const CyclicRing& ring, const std::map<Int, Cutoff>& cutoffs);

struct FiltrationJump {
    int degree;
    std::vector<Int> primes;
};
// Step-function input: Φ(n) = below for n below the first jump, the i-th jump
// set on [n_i, n_{i+1}), and above past the last jump.  `below` empty means
// the whole spectrum.
ThomasonFiltration filtration_from_jumps(const CyclicRing& ring,
                                         const std::vector<FiltrationJump>& jumps,
                                         const std::optional<std::vector<Int>>& below,
                                         const std::vector<Int>& above);

struct AisleReport {
    bool ok = true;
    std::map<int, bool> degrees;  // verdict per degree with nonzero cohomology
};
AisleReport in_aisle(const Complex& x, const ThomasonFiltration& f);

struct CoaisleReport {
    bool ok = true;
    std::optional<Int> witness_divisor;
    std::optional<int> witness_degree;
};
CoaisleReport in_coaisle_cech(const Complex& x, const ThomasonFiltration& f);
CoaisleReport in_coaisle_hom(const Complex& x, const ThomasonFiltration& f);
bool in_coaisle_reduced(const Complex& x, const ThomasonFiltration& f);

bool in_co_t_coaisle(const Complex& x, const ThomasonFiltration& f);

struct TorsionComplex {
    Complex part;   // Γ_P X, the degreewise P-primary subcomplex
    ChainMap incl;  // Γ_P X → X
};
TorsionComplex torsion_subcomplex(const Complex& x, const SpecSubset& ps);

struct TruncationTriangle {
    Complex u_part, input, v_part;
    ChainMap to_input;  // τ_U X → X
    ChainMap to_v;      // X → τ_V X
    bool u_ok = false, v_ok = false, triangle_ok = false;
};
TruncationTriangle truncate_t(const Complex& x, const ThomasonFiltration& f);

std::vector<Complex> generators_of(const ThomasonFiltration& f);
ThomasonFiltration filtration_of_generators(const CyclicRing& ring,
                                            const std::vector<Complex>& gens);

struct StalkHomResult {
    FinModule lhs;  // homotopy classes X → E[−n]
    FinModule rhs;  // Hom(H^n(X), E)
    ModuleMap iso;  // f ↦ H^n(f)
    bool confirmed = false;
};
StalkHomResult stalk_hom_check(const Complex& x, const FinModule& e, int n);

struct CoresolutionStep {
    FinModule envelope;
    int degree;
    bool stalk_ok = false;  // stalk passes every coaisle oracle
};
std::vector<CoresolutionStep> coresolve_in_coaisle(const Complex& x,
                                                   const ThomasonFiltration& f, int depth);

enum class Boundedness { bounded, bounded_below, bounded_above, neither };
struct BoundednessReport {
    Boundedness kind;
    bool is_intermediate;
};
BoundednessReport classify_boundedness(const ThomasonFiltration& f);

// Cached per-complex membership data: each oracle reduces to comparing one of
// these infima against a cutoff, so sweeps over many filtrations reuse them.
struct MembershipProfile {
    CyclicRing ring;
    std::map<Int, std::optional<int>> cech_inf;   // divisor → inf H(Č~(d) ⊗ X)
    std::map<Int, std::optional<int>> hom_min;    // divisor → min k with Hom_D(K(d), X[k]) ≠ 0
    std::map<Int, std::optional<int>> gamma_inf;  // prime → inf H(Γ_p X)
    std::map<Int, std::optional<int>> koszul_sup; // divisor → sup H(K(d) ⊗ X)
};
MembershipProfile membership_profile(const Complex& x);
bool profile_coaisle_cech(const MembershipProfile& p, const ThomasonFiltration& f);
bool profile_coaisle_hom(const MembershipProfile& p, const ThomasonFiltration& f);
bool profile_coaisle_reduced(const MembershipProfile& p, const ThomasonFiltration& f);
bool profile_co_t(const MembershipProfile& p, const ThomasonFiltration& f);

}  // namespace tslab
