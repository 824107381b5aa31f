#include <doctest.h>

#include "tslab/complex.hpp"

using namespace tslab;

namespace {

Complex free_stalk(const CyclicRing& r) { return stalk_complex(r, free_module(r, 1), 0); }

// Alternating |H^i| product over the long exact sequence of a cone triangle.
bool triangle_euler(const Complex& x, const Complex& y, const Complex& c) {
    Int even = 1, odd = 1;
    GradedModule hx = cohomology(x), hy = cohomology(y), hc = cohomology(c);
    int lo = 100, hi = -100;
    for (const GradedModule* g : {&hx, &hy, &hc})
        for (const auto& [n, m] : g->parts) {
            lo = std::min(lo, n);
            hi = std::max(hi, n);
        }
    for (int i = lo; i <= hi; ++i) {
        Int plus = hx.at(i).order() * hc.at(i).order();
        Int minus = hy.at(i).order();
        if (i % 2 == 0) {
            even *= plus;
            odd *= minus;
        } else {
            odd *= plus;
            even *= minus;
        }
    }
    return even == odd;
}

}  // namespace

TEST_CASE("complex construction and normal form") {
    CyclicRing r = make_ring(12);
    FinModule f = free_module(r, 1), z = zero_module(r);
    Complex k2 = koszul(r, {Int(2)});
    CHECK(k2.min_degree == -1);
    CHECK(k2.coords.size() == 2);
    CHECK(k2.diffs[0].matrix.at(0, 0) == 2);

    Complex padded = make_complex(r, -3, {z, z, f, f, z}, {ModuleMap::zero(z, z), ModuleMap::zero(z, f), ModuleMap::scalar(f, 2), ModuleMap::zero(f, z)});
    CHECK(padded == k2);

    CHECK(make_complex(r, 0, {z, z}, {ModuleMap::zero(z, z)}).is_zero());
    CHECK_THROWS_AS(make_complex(r, 0, {f, f, f},
                                 {ModuleMap::scalar(f, 2), ModuleMap::scalar(f, 3)}),
                    domain_error);
    CHECK_THROWS_AS(make_complex(r, 0, {f, f}, {}), domain_error);
}

TEST_CASE("shift") {
    CyclicRing r = make_ring(12);
    Complex r0 = free_stalk(r);
    Complex s = shift(r0, 1);
    CHECK(s.min_degree == -1);
    CHECK(s.top_degree() == -1);

    Complex k2 = koszul(r, {Int(2)});
    CHECK(shift(shift(k2, 1), -1) == k2);
    GradedModule h = cohomology(shift(k2, -1));
    CHECK(h.at(0).factors == std::vector<Int>{2});
    CHECK(h.at(1).factors == std::vector<Int>{2});
    CHECK(h.parts.size() == 2);
    CHECK(shift(k2, 1).diffs[0].matrix.at(0, 0) == 10);  // sign flip mod 12
}

TEST_CASE("cone") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    CHECK(is_acyclic(cone(identity_chain_map(k2)).cone));

    ConeResult from_zero = cone(zero_chain_map(zero_complex(r), k2));
    CHECK(from_zero.cone == k2);

    Complex r0 = free_stalk(r);
    ChainMap mult2 = make_chain_map(r0, r0, {{0, ModuleMap::scalar(free_module(r, 1), 2)}});
    CHECK(cone(mult2).cone == k2);

    ConeResult c = cone(mult2);
    CHECK(triangle_euler(c.from_target.source, c.cone, shift(r0, 1)));
    CHECK(triangle_euler(r0, r0, c.cone));
}

TEST_CASE("soft truncation") {
    CyclicRing r = make_ring(12);
    Complex k2m1 = shift(koszul(r, {Int(2)}), -1);  // degrees 0, 1

    TruncationResult le = soft_truncate(k2m1, 0, TruncSide::le);
    CHECK(le.part.min_degree == 0);
    CHECK(le.part.top_degree() == 0);
    CHECK(le.part.coords[0].factors == std::vector<Int>{2});
    CHECK(le.cmp.component(0).matrix.at(0, 0) == 6);  // ker(mult 2) = {0,6}

    CHECK(soft_truncate(k2m1, 5, TruncSide::le).part == k2m1);
    CHECK(soft_truncate(k2m1, -1, TruncSide::le).part.is_zero());
    CHECK(soft_truncate(k2m1, -1, TruncSide::gt).part == k2m1);
    CHECK(soft_truncate(k2m1, 5, TruncSide::gt).part.is_zero());

    TruncationResult gt = soft_truncate(k2m1, 0, TruncSide::gt);
    // H preserved on the respective sides
    CHECK(isomorphic(cohomology_at(le.part, 0), cohomology_at(k2m1, 0)));
    CHECK(isomorphic(cohomology_at(gt.part, 1), cohomology_at(k2m1, 1)));
    CHECK(cohomology_at(gt.part, 0).is_zero());
    // the two halves complement each other degreewise
    for (int n = 0; n <= 1; ++n)
        CHECK(le.part.coord_at(n).order() * gt.part.coord_at(n).order() ==
              k2m1.coord_at(n).order());
    // cone of the inclusion is the quotient half, up to quasi-isomorphism
    CHECK(same_cohomology(cone(le.cmp).cone, gt.part));
}

TEST_CASE("brutal truncation") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    CHECK(brutal_truncate(k2, 0, TruncSide::le) == k2);
    CHECK(brutal_truncate(k2, 0, TruncSide::gt).is_zero());
    Complex bottom = brutal_truncate(k2, -1, TruncSide::le);
    CHECK(bottom.min_degree == -1);
    CHECK(bottom.top_degree() == -1);
    CHECK(bottom.coords[0].factors == std::vector<Int>{12});
}

TEST_CASE("tensor of complexes") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    Complex k23 = tensor_complexes(k2, koszul(r, {Int(3)}));
    CHECK(is_acyclic(k23));
    CHECK(k23.min_degree == -2);
    CHECK(k23.coords[1].rank() == 2);

    CHECK(tensor_complexes(k2, free_stalk(r)) == k2);
    GradedModule h = cohomology(tensor_complexes(k2, free_stalk(r)));
    CHECK(h.at(-1).factors == std::vector<Int>{2});
    CHECK(h.at(0).factors == std::vector<Int>{2});

    Complex a = stalk_complex(r, cyclic_module(r, 4), 0);
    Complex b = stalk_complex(r, cyclic_module(r, 6), 0);
    Complex ab = tensor_complexes(a, b);
    CHECK(ab.coords[0].factors == std::vector<Int>{2});
    CHECK(ab.min_degree == 0);
}

TEST_CASE("hom complex") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    Complex z2 = stalk_complex(r, cyclic_module(r, 2), 0);
    GradedModule h = cohomology(hom_complex(k2, z2));
    CHECK(h.at(0).factors == std::vector<Int>{2});
    CHECK(h.at(1).factors == std::vector<Int>{2});
    CHECK(h.parts.size() == 2);

    Complex x = make_complex(r, 0, {cyclic_module(r, 4), cyclic_module(r, 6)},
                             {ModuleMap(cyclic_module(r, 4), cyclic_module(r, 6),
                                        IntMat(1, 1, {Int(3)}))});
    CHECK(hom_complex(free_stalk(r), x) == x);
    CHECK(hom_complex(x, zero_complex(r)).is_zero());
}

TEST_CASE("cohomology") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    GradedModule h = cohomology(k2);
    CHECK(h.at(-1).factors == std::vector<Int>{2});
    CHECK(h.at(0).factors == std::vector<Int>{2});
    CHECK(h.lowest() == -1);
    CHECK(h.highest() == 0);

    CHECK(cohomology(cone(identity_chain_map(k2)).cone).is_zero());

    Complex stalk = stalk_complex(r, cyclic_module(r, 6), 3);
    GradedModule hs = cohomology(stalk);
    CHECK(hs.parts.size() == 1);
    CHECK(hs.at(3).factors == std::vector<Int>{6});
}

TEST_CASE("cohomology map") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    ModuleMap h0 = cohomology_map(identity_chain_map(k2), 0);
    CHECK(h0 == ModuleMap::identity(h0.source));

    ReplacementResult rep = projective_replacement(
        stalk_complex(r, cyclic_module(r, 2), 0), -2);
    ModuleMap induced = cohomology_map(rep.map, 0);
    CHECK(kernel(induced).module.is_zero());
    CHECK(induced.source.order() == induced.target.order());
    CHECK(induced.target.order() == 2);
}

TEST_CASE("koszul builder") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    CHECK(k2.min_degree == -1);
    CHECK(cohomology_at(k2, 0).factors == std::vector<Int>{2});

    CHECK(koszul(r, {}) == free_stalk(r));

    Complex k23 = koszul(r, {Int(2), Int(3)});
    CHECK(k23.min_degree == -2);
    CHECK(k23.coords.size() == 3);
    CHECK(is_acyclic(k23));

    // Supp H^k(K(d)) ⊆ V(d), all divisors of all test rings
    for (long long n : {4LL, 12LL, 30LL, 36LL}) {
        CyclicRing ring = make_ring(n);
        for (const Int& d : nonunit_divisors(ring)) {
            Complex kd = koszul(ring, {d});
            SpecSubset vd = v_set(ring, make_ideal(ring, d));
            for (const auto& [deg, m] : cohomology(kd).parts)
                CHECK(support(m).subset_of(vd));
        }
    }
}

TEST_CASE("cech builder") {
    CyclicRing r = make_ring(12);
    Complex c2 = cech_tilde(r, {Int(2)});
    CHECK(c2.min_degree == 0);
    CHECK(c2.coords[0].factors == std::vector<Int>{12});
    CHECK(c2.coords[1].factors == std::vector<Int>{3});
    CHECK(cohomology_at(c2, 0).factors == std::vector<Int>{4});
    CHECK(cohomology_at(c2, 1).is_zero());

    CHECK(cech_tilde(r, {}) == free_stalk(r));

    Complex c6 = cech_tilde(r, {Int(6)});
    CHECK(c6 == free_stalk(r));
    CHECK(cohomology_at(c6, 0).factors == std::vector<Int>{12});
}

TEST_CASE("cech triangle") {
    CyclicRing r = make_ring(12);
    CechTriangle t2 = cech_triangle(r, make_ideal(r, 2));
    CHECK(same_cohomology(t2.cech, stalk_complex(r, cyclic_module(r, 3), 0)));
    CHECK(triangle_euler(t2.tilde, t2.unit, t2.cech));

    CechTriangle t1 = cech_triangle(r, make_ideal(r, 1));
    CHECK(is_acyclic(t1.tilde));
    CHECK(same_cohomology(t1.cech, free_stalk(r)));

    CechTriangle t0 = cech_triangle(r, make_ideal(r, 0));
    CHECK(same_cohomology(t0.tilde, free_stalk(r)));
    CHECK(is_acyclic(t0.cech));
}

TEST_CASE("projective replacement") {
    CyclicRing r4 = make_ring(4);
    Complex x = stalk_complex(r4, cyclic_module(r4, 2), 0);
    ReplacementResult rep = projective_replacement(x, -2);
    CHECK(rep.p.min_degree == -2);
    CHECK(rep.p.top_degree() == 0);
    CHECK(all_free(rep.p));
    for (const ModuleMap& d : rep.p.diffs) CHECK(d.matrix.at(0, 0) == 2);
    CHECK(cohomology_at(rep.p, 0).factors == std::vector<Int>{2});
    CHECK(cohomology_at(rep.p, -1).is_zero());

    CyclicRing r = make_ring(12);
    Complex r0 = free_stalk(r);
    ReplacementResult free_rep = projective_replacement(r0, -4);
    CHECK(free_rep.p == r0);

    Complex k2 = koszul(r, {Int(2)});
    ReplacementResult krep = projective_replacement(k2, -3);
    for (int i = -2; i <= 0; ++i)
        CHECK(isomorphic(cohomology_at(krep.p, i), cohomology_at(k2, i)));

    Complex mixed = make_complex(r, 0, {cyclic_module(r, 4), cyclic_module(r, 6)},
                                 {ModuleMap(cyclic_module(r, 4), cyclic_module(r, 6),
                                            IntMat(1, 1, {Int(3)}))});
    ReplacementResult mrep = projective_replacement(mixed, -2);
    CHECK(all_free(mrep.p));
    CHECK(isomorphic(cohomology_at(mrep.p, 0), cyclic_module(r, 2)));
    CHECK(isomorphic(cohomology_at(mrep.p, 1), cyclic_module(r, 3)));
    CHECK(cohomology_at(mrep.p, -1).is_zero());

    CHECK_THROWS_AS(projective_replacement(mixed, 1), domain_error);
}

TEST_CASE("derived hom") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    Complex z2 = stalk_complex(r, cyclic_module(r, 2), 0);
    CHECK(hom_derived(k2, z2, 0).factors == std::vector<Int>{2});

    for (int k = -2; k <= 1; ++k)
        CHECK(isomorphic(hom_derived(free_stalk(r), k2, k), cohomology_at(k2, k)));

    CyclicRing r4 = make_ring(4);
    Complex s2 = stalk_complex(r4, cyclic_module(r4, 2), 0);
    for (int k = 0; k <= 4; ++k)
        CHECK(hom_derived(s2, s2, k).factors == std::vector<Int>{2});
    CHECK(hom_derived(s2, s2, -1).is_zero());
}

TEST_CASE("derived hom is margin independent") {
    CyclicRing r = make_ring(12);
    Complex x = make_complex(r, -1, {cyclic_module(r, 6), cyclic_module(r, 4)},
                             {ModuleMap(cyclic_module(r, 6), cyclic_module(r, 4),
                                        IntMat(1, 1, {Int(2)}))});
    Complex y = koszul(r, {Int(2)});
    for (int k = -1; k <= 2; ++k) {
        int floor = std::min(x.min_degree, y.min_degree - k - 2);
        Complex p1 = projective_replacement(x, floor).p;
        Complex p2 = projective_replacement(x, floor - 1).p;
        CHECK(isomorphic(cohomology_at(hom_complex(p1, y), k),
                         cohomology_at(hom_complex(p2, y), k)));
        CHECK(isomorphic(hom_derived(x, y, k), cohomology_at(hom_complex(p1, y), k)));
    }
}

TEST_CASE("compact dual") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    Complex dual = compact_dual(k2);
    CHECK(dual.min_degree == 0);
    CHECK(dual.top_degree() == 1);
    CHECK(all_free(dual));
    Int e = dual.diffs[0].matrix.at(0, 0);
    CHECK((e == 2 || e == 10));
    CHECK(cohomology_at(dual, 0).factors == std::vector<Int>{2});
    CHECK(cohomology_at(dual, 1).factors == std::vector<Int>{2});

    CHECK(compact_dual(free_stalk(r)) == free_stalk(r));

    Complex shifted = compact_dual(shift(k2, -1));
    Complex expect = shift(dual, 1);
    CHECK(shifted.min_degree == expect.min_degree);
    CHECK(same_cohomology(shifted, expect));

    Complex dd = compact_dual(dual);
    CHECK(dd.min_degree == k2.min_degree);
    for (int n = -1; n <= 0; ++n) CHECK(dd.coord_at(n) == k2.coord_at(n));
    CHECK(same_cohomology(dd, k2));

    CHECK_THROWS_AS(compact_dual(stalk_complex(r, cyclic_module(r, 2), 0)), domain_error);
}

TEST_CASE("tower colimit") {
    CyclicRing r = make_ring(12);
    FinModule z4 = cyclic_module(r, 4);
    ModuleMap m2 = ModuleMap::scalar(z4, 2), m3 = ModuleMap::scalar(z4, 3);

    CHECK(tower_colimit({z4, z4, z4, z4}, {m2, m2, m2}).is_zero());
    CHECK(tower_colimit({z4, z4, z4}, {ModuleMap::identity(z4), ModuleMap::identity(z4)})
              .factors == std::vector<Int>{4});
    CHECK(tower_colimit({z4, z4, z4}, {m3, m3}).factors == std::vector<Int>{4});

    FinModule z12 = free_module(r, 1);
    ModuleMap t2 = ModuleMap::scalar(z12, 2);
    CHECK(tower_colimit({z12, z12, z12, z12, z12}, {t2, t2, t2, t2}).factors ==
          std::vector<Int>{3});

    FinModule z2 = cyclic_module(r, 2);
    ModuleMap grow(z2, z4, IntMat(1, 1, {Int(2)}));
    CHECK_THROWS_WITH_AS(tower_colimit({z2, z4}, {grow}), "tower did not stabilize",
                         domain_error);
}

TEST_CASE("cech agrees with the koszul dual tower") {
    CyclicRing r = make_ring(12);
    std::vector<Complex> tests = {free_stalk(r), koszul(r, {Int(2)}),
                                  stalk_complex(r, cyclic_module(r, 4), 0)};
    for (const Int& x : {Int(2), Int(3), Int(6)}) {
        for (const Complex& X : tests) {
            Complex lhs = tensor_complexes(cech_tilde(r, {x}), X);
            const int window = 6;
            std::vector<Complex> terms;
            std::vector<ChainMap> trans;
            FinModule f = free_module(r, 1);
            Int pw = x;
            for (int m = 1; m <= window; ++m) {
                terms.push_back(compact_dual(koszul(r, {pw})));
                pw = mod_norm(pw * x, r.modulus);
            }
            for (int m = 0; m + 1 < window; ++m) {
                std::map<int, ModuleMap> comps;
                comps.emplace(0, ModuleMap::identity(f));
                comps.emplace(1, ModuleMap::scalar(f, x));
                trans.push_back(make_chain_map(terms[m], terms[m + 1], std::move(comps)));
            }
            for (int i = -1; i <= 2; ++i) {
                std::vector<FinModule> ms;
                std::vector<ModuleMap> fs;
                for (int m = 0; m < window; ++m) {
                    Complex t = tensor_complexes(terms[m], X);
                    ms.push_back(subquotient(t.diff_at(i - 1), t.diff_at(i)).module);
                }
                for (int m = 0; m + 1 < window; ++m)
                    fs.push_back(cohomology_map(tensor_chain_map(trans[m], X), i));
                CHECK(isomorphic(tower_colimit(ms, fs), cohomology_at(lhs, i)));
            }
        }
    }
}

TEST_CASE("direct sums of complexes") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    Complex s = stalk_complex(r, cyclic_module(r, 3), 1);
    DirectSumComplex ds = direct_sum_complexes(r, {k2, s});
    CHECK(ds.total.min_degree == -1);
    CHECK(ds.total.top_degree() == 1);
    for (int n = -1; n <= 1; ++n)
        CHECK(ds.total.coord_at(n).order() == k2.coord_at(n).order() * s.coord_at(n).order());
    GradedModule h = cohomology(ds.total);
    CHECK(h.at(-1).factors == std::vector<Int>{2});
    CHECK(h.at(0).factors == std::vector<Int>{2});
    CHECK(h.at(1).factors == std::vector<Int>{3});
    // projection ∘ inclusion = identity on each part
    for (std::size_t i : {std::size_t(0), std::size_t(1)}) {
        const Complex& part = i == 0 ? k2 : s;
        for (int n = part.min_degree; n <= part.top_degree(); ++n) {
            ModuleMap roundtrip = compose(ds.projs[i].component(n), ds.incls[i].component(n));
            CHECK(roundtrip == ModuleMap::identity(part.coord_at(n)));
        }
    }
}

TEST_CASE("chain map validation") {
    CyclicRing r = make_ring(12);
    Complex k2 = koszul(r, {Int(2)});
    FinModule f = free_module(r, 1);
    // degree-0-only identity does not commute with the differential of K(2)
    CHECK_THROWS_AS(make_chain_map(k2, free_stalk(r), {{0, ModuleMap::scalar(f, 1)}}),
                    domain_error);
    CHECK_THROWS_AS(make_chain_map(k2, k2, {{5, ModuleMap::identity(f)}}), domain_error);
}
