#include "tslab/ring.hpp"

#include <algorithm>

namespace tslab {

namespace {

// Trial division.  The desk-scale contract caps what we are willing to
// factor; anything beyond it is rejected rather than silently mangled.
const Int kFactorBound = Int("1000000000000");

std::vector<std::pair<Int, int>> factorize(Int n) {
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0) out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= n && p < 1000000; p += 2) strip(p);
    if (n > 1) {
        // remaining cofactor has no divisor below 10^6, so it is prime
        // whenever it is below 10^12
        if (n > kFactorBound) throw domain_error("overflow policy: modulus exceeds the supported factorization range");
        out.emplace_back(n, 1);
    }
    return out;
}

}  // namespace

int CyclicRing::exponent_of(const Int& p) const {
    for (const auto& [q, e] : primes)
        if (q == p) return e;
    return 0;
}

Int CyclicRing::primary_part(const Int& p) const {
    Int r = 1;
    for (int i = 0; i < exponent_of(p); ++i) r *= p;
    return r;
}

CyclicRing make_ring(const Int& n) {
    if (n < 2) throw domain_error("modulus too small");
    CyclicRing ring;
    ring.modulus = n;
    ring.primes = factorize(n);
    return ring;
}

Ideal make_ideal(const CyclicRing& ring, const Int& lift) {
    Int g = gcd(mod_norm(lift, ring.modulus), ring.modulus);
    if (g == 0) g = ring.modulus;
    return Ideal{g};
}

bool SpecSubset::contains(const Int& p) const {
    return std::find(primes.begin(), primes.end(), p) != primes.end();
}

bool SpecSubset::subset_of(const SpecSubset& o) const {
    return std::all_of(primes.begin(), primes.end(), [&](const Int& p) { return o.contains(p); });
}

SpecSubset make_subset(const CyclicRing& ring, std::vector<Int> ps) {
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (const Int& p : ps)
        if (ring.exponent_of(p) == 0) throw domain_error("prime not in the spectrum of the ring");
    return SpecSubset{std::move(ps)};
}

SpecSubset spec_of(const CyclicRing& ring) {
    SpecSubset s;
    for (const auto& [p, e] : ring.primes) s.primes.push_back(p);
    return s;
}

SpecSubset subset_union(const SpecSubset& a, const SpecSubset& b) {
    SpecSubset out = a;
    for (const Int& p : b.primes)
        if (!out.contains(p)) out.primes.push_back(p);
    std::sort(out.primes.begin(), out.primes.end());
    return out;
}

SpecSubset subset_intersection(const SpecSubset& a, const SpecSubset& b) {
    SpecSubset out;
    for (const Int& p : a.primes)
        if (b.contains(p)) out.primes.push_back(p);
    return out;
}

SpecSubset v_set(const CyclicRing& ring, const Ideal& ideal) {
    SpecSubset s;
    for (const auto& [p, e] : ring.primes)
        if (ideal.gen % p == 0) s.primes.push_back(p);
    return s;
}

Ideal divisor_of_subset(const CyclicRing& ring, const SpecSubset& subset) {
    Int d = 1;
    for (const Int& p : subset.primes) {
        if (ring.exponent_of(p) == 0) throw domain_error("prime not in the spectrum of the ring");
        d *= p;
    }
    return Ideal{d};
}

LocalizedRing localize_away(const CyclicRing& ring, const Int& x) {
    Int lift = mod_norm(x, ring.modulus);
    Int m = 1;
    for (const auto& [p, e] : ring.primes) {
        bool divides = (lift == 0) || (lift % p == 0);
        if (!divides) m *= ring.primary_part(p);
    }
    return LocalizedRing{m};
}

std::vector<std::pair<Int, Int>> crt_idempotents(const CyclicRing& ring) {
    std::vector<std::pair<Int, Int>> out;
    for (const auto& [p, e] : ring.primes) out.emplace_back(p, crt_idempotent(ring, p));
    return out;
}

Int crt_idempotent(const CyclicRing& ring, const Int& p) {
    Int q = ring.primary_part(p);
    if (q == 0 || ring.exponent_of(p) == 0) throw domain_error("prime not in the spectrum of the ring");
    Int rest = ring.modulus / q;
    ExtGcd e = ext_gcd(q, rest);  // u*q + v*rest = 1
    return mod_norm(e.v * rest, ring.modulus);
}

std::vector<Int> divisors(const CyclicRing& ring) {
    std::vector<Int> ds{1};
    for (const auto& [p, e] : ring.primes) {
        std::size_t base = ds.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::vector<Int> nonunit_divisors(const CyclicRing& ring) {
    std::vector<Int> ds = divisors(ring);
    ds.erase(ds.begin());  // drop 1
    return ds;
}

}  // namespace tslab
