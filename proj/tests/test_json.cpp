#include <doctest.h>

#include <functional>

#include "tslab/json_io.hpp"

using namespace tslab;

namespace {

std::string err_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const domain_error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("ring subset ideal wire forms") {
    CyclicRing r = make_ring(12);
    CHECK(to_json(r) == json{{"modulus", 12}});
    CHECK(ring_from_json(json{{"modulus", 12}}).modulus == 12);
    CHECK(err_of([] { ring_from_json(json{{"modulus", 1}}); }) == "/modulus: modulus too small");
    CHECK(err_of([] { ring_from_json(json::object()); }) == ": missing field 'modulus'");

    SpecSubset s = make_subset(r, {3, 2});
    CHECK(to_json(s) == json{{"primes", {2, 3}}});
    CHECK(subset_from_json(r, to_json(s)).primes == s.primes);

    Ideal i = make_ideal(r, 6);
    CHECK(ideal_from_json(r, to_json(i)).gen == i.gen);
}

TEST_CASE("module and map wire forms") {
    CyclicRing r = make_ring(12);
    FinModule m = make_module(r, {4, 3});
    CHECK(to_json(m) == json{{"factors", {4, 3}}});
    CHECK(module_from_json(r, to_json(m)) == m);

    ModuleMap f(make_module(r, {4}), make_module(r, {2, 12}),
                IntMat(2, 1, {Int(1), Int(3)}));
    ModuleMap g = map_from_json(r, to_json(f));
    CHECK(g == f);

    json bad{{"source", {{"factors", {2}}}},
             {"target", {{"factors", {4}}}},
             {"matrix", {{1}}}};
    CHECK(err_of([&] { map_from_json(r, bad); }) == "/matrix/0/0: entry not well-defined");

    json shape{{"source", {{"factors", {2}}}}, {"target", {{"factors", {4}}}}, {"matrix", {{2, 2}}}};
    CHECK(err_of([&] { map_from_json(r, shape); }) == "/matrix/0: expected 1 columns");
}

TEST_CASE("complex wire form matches the koszul literal") {
    CyclicRing r = make_ring(12);
    json lit = json::parse(R"({"min_degree": -1,
                               "modules": [{"factors":[12]},{"factors":[12]}],
                               "differentials": [{"matrix":[[2]]}]})");
    CHECK(complex_from_json(r, lit) == koszul(r, {Int(2)}));
    CHECK(to_json(koszul(r, {Int(2)})) == lit);

    CHECK(complex_from_json(r, to_json(zero_complex(r))).is_zero());

    Complex mixed = make_complex(
        r, 0, {make_module(r, {4}), make_module(r, {2, 6})},
        {ModuleMap(make_module(r, {4}), make_module(r, {2, 6}), IntMat(2, 1, {Int(0), Int(3)}))});
    CHECK(complex_from_json(r, to_json(mixed)) == mixed);

    json notc = to_json(mixed);
    notc["differentials"] = json::array();
    CHECK(err_of([&] { complex_from_json(r, notc); }) == "/differentials: expected 1 entries");

    json badmod = to_json(mixed);
    badmod["modules"][1]["factors"] = {5};
    CHECK(err_of([&] { complex_from_json(r, badmod); }).substr(0, 11) == "/modules/1/");

    json g = to_json(cohomology(koszul(r, {Int(2)})));
    CHECK(g == json::parse(R"({"parts":[{"degree":-1,"factors":[2]},{"degree":0,"factors":[2]}]})"));
}

TEST_CASE("filtration wire forms") {
    CyclicRing r = make_ring(12);
    ThomasonFiltration f = make_filtration(r, {{2, Cutoff::at(1)}, {3, Cutoff::at(0)}});
    json lit = json::parse(R"({"cutoffs":[{"prime":2,"top":1},{"prime":3,"top":0}]})");
    CHECK(filtration_from_json(r, lit) == f);
    CHECK(to_json(f) == lit);

    ThomasonFiltration g =
        make_filtration(r, {{2, Cutoff::pos_inf()}, {3, Cutoff::neg_inf()}});
    json glit = json::parse(R"({"cutoffs":[{"prime":2,"top":"+inf"},{"prime":3,"top":"-inf"}]})");
    CHECK(filtration_from_json(r, glit) == g);
    CHECK(to_json(g) == glit);
    CHECK(filtration_from_json(r, to_json(g)) == g);

    json partial = json::parse(R"({"cutoffs":[{"prime":2,"top":0}]})");
    CHECK(filtration_from_json(r, partial).cutoffs.at(3) == Cutoff::neg_inf());

    json jumps = json::parse(R"({"jumps":[[0,[2,3]],[1,[2]]]})");
    CHECK(filtration_from_json(r, jumps) == f);
    json jumps2 = json::parse(R"({"jumps":[[0,[2,3]]],"below":"spec","above":[3]})");
    CHECK(filtration_from_json(r, jumps2).cutoffs.at(3) == Cutoff::pos_inf());
    json jumps3 = json::parse(R"({"jumps":[[2,[2]]],"below":[2,3],"above":[]})");
    CHECK(filtration_from_json(r, jumps3).cutoffs.at(3) == Cutoff::at(1));

    CHECK_THROWS_AS(filtration_from_json(r, json::object()), domain_error);
    CHECK_THROWS_AS(filtration_from_json(r, json::parse(R"({"cutoffs":[{"prime":5,"top":0}]})")),
                    domain_error);
}

TEST_CASE("complex input sugar") {
    CyclicRing r = make_ring(12);
    CHECK(parse_complex_text(r, "stalk(3,[1])") ==
          stalk_complex(r, make_module(r, {3}), 1));
    CHECK(parse_complex_text(r, "stalk(4)") == stalk_complex(r, make_module(r, {4}), 0));
    CHECK(parse_complex_text(r, "stalk(1)").is_zero());
    CHECK(parse_complex_text(r, "K(2)[-1]") == shift(koszul(r, {Int(2)}), -1));
    CHECK(parse_complex_text(r, "koszul(2,3)") == koszul(r, {Int(2), Int(3)}));
    CHECK(parse_complex_text(r, " K( 2 ) [ -1 ] ") == shift(koszul(r, {Int(2)}), -1));
    CHECK(parse_complex_text(r, R"({"min_degree":0,"modules":[{"factors":[12]}],"differentials":[]})") ==
          stalk_complex(r, free_module(r, 1), 0));

    std::vector<Complex> gens = parse_complex_list(r, "[K(2)[-1], K(3)[0]]");
    REQUIRE(gens.size() == 2);
    CHECK(gens[0] == shift(koszul(r, {Int(2)}), -1));
    CHECK(gens[1] == koszul(r, {Int(3)}));
    CHECK(filtration_of_generators(r, gens) ==
          make_filtration(r, {{2, Cutoff::at(1)}, {3, Cutoff::at(0)}}));

    CHECK(parse_complex_list(r, "[]").empty());
    CHECK(parse_complex_list(r, "[stalk(3,[1])]").size() == 1);

    CHECK_THROWS_AS(parse_complex_text(r, ""), domain_error);
    CHECK_THROWS_AS(parse_complex_text(r, "spiral(2)"), domain_error);
    CHECK_THROWS_AS(parse_complex_text(r, "K(2)[x]"), domain_error);
    CHECK_THROWS_AS(parse_complex_text(r, "stalk(2,3)"), domain_error);
    CHECK_THROWS_AS(parse_complex_text(r, "{not json"), domain_error);
    CHECK_THROWS_AS(parse_complex_list(r, "K(2)"), domain_error);
}
