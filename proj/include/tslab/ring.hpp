#pragma once

#include <utility>
#include <vector>

#include "tslab/intmat.hpp"

namespace tslab {

// The base ring ℤ/n with its factored modulus.  Immutable after construction.
struct CyclicRing {
    Int modulus;                            // n ≥ 2
    std::vector<std::pair<Int, int>> primes;  // (p, e_p) sorted by p, n = Π p^e

    int exponent_of(const Int& p) const;    // e_p, 0 if p does not divide n
    Int primary_part(const Int& p) const;   // p^{e_p}
    bool operator==(const CyclicRing& o) const { return modulus == o.modulus; }

    // The support-based aisle test is only valid over a noetherian base; any
    // future ring backend must keep this flag honest.
    static constexpr bool noetherian_backend = true;
};

CyclicRing make_ring(const Int& n);

// Principal ideal (gen) with gen a positive divisor of n; gen = n encodes the
// zero ideal, gen = 1 the unit ideal.
struct Ideal {
    Int gen;
    bool operator==(const Ideal& o) const = default;
};
Ideal make_ideal(const CyclicRing& ring, const Int& lift);

// A subset of Spec(ℤ/n): sorted list of primes dividing n.
struct SpecSubset {
    std::vector<Int> primes;
    bool contains(const Int& p) const;
    bool subset_of(const SpecSubset& o) const;
    bool operator==(const SpecSubset& o) const = default;
};
SpecSubset make_subset(const CyclicRing& ring, std::vector<Int> primes);
SpecSubset spec_of(const CyclicRing& ring);
SpecSubset subset_union(const SpecSubset& a, const SpecSubset& b);
SpecSubset subset_intersection(const SpecSubset& a, const SpecSubset& b);

SpecSubset v_set(const CyclicRing& ring, const Ideal& ideal);
Ideal divisor_of_subset(const CyclicRing& ring, const SpecSubset& subset);

// ℤ/n with x inverted is ℤ/m for the coprime-to-x part m of n; m = 1 is the
// zero ring.  The projection ℤ/n → ℤ/m is reduction mod m.
struct LocalizedRing {
    Int new_modulus;
    bool is_zero_ring() const { return new_modulus == 1; }
};
LocalizedRing localize_away(const CyclicRing& ring, const Int& x);

std::vector<std::pair<Int, Int>> crt_idempotents(const CyclicRing& ring);
Int crt_idempotent(const CyclicRing& ring, const Int& p);

// All positive divisors of n, ascending; nonunit_divisors drops 1.
std::vector<Int> divisors(const CyclicRing& ring);
std::vector<Int> nonunit_divisors(const CyclicRing& ring);

}  // namespace tslab
