#include <chrono>
#include <cstdio>
#include <string>

#include "tslab/lab.hpp"

using namespace tslab;

namespace {

const long long kAllRings[] = {4, 12, 30, 36};

struct Gate {
    int failures = 0;

    void report(int idx, const char* name, bool pass, double secs, double target,
                const std::string& extra = "") {
        std::printf("[%s] %2d. %-22s %8.2fs (target %gs)%s%s\n", pass ? "PASS" : "FAIL", idx,
                    name, secs, target, extra.empty() ? "" : "  ", extra.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    }
};

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SuiteConfig suite_for(const char* property, std::vector<long long> rings, std::size_t corpus) {
    SuiteConfig cfg;
    cfg.rings = std::move(rings);
    cfg.corpus = corpus;
    cfg.properties = {property};
    cfg.seed = 1;
    cfg.jobs = 1;
    return cfg;
}

std::string suite_extra(const SuiteReport& rep) {
    std::string s = std::to_string(rep.cases) + " cases";
    if (rep.failed) s += ", " + std::to_string(rep.failed) + " failed";
    return s;
}

}  // namespace

int main() {
    Gate gate;

    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        for (long long n : kAllRings) {
            CyclicRing r = make_ring(n);
            for (const Int& d : nonunit_divisors(r))
                ok = ok && cohomology_at(koszul(r, {d}), 0).canonical() ==
                               make_module(r, {d}).canonical();
        }
        gate.report(1, "koszul H^0 identity", ok, elapsed(t0), 1);
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = true;
        for (long long n : kAllRings) {
            CyclicRing r = make_ring(n);
            for (const Int& d : nonunit_divisors(r)) {
                SpecSubset vd = v_set(r, make_ideal(r, d));
                for (const auto& [k, h] : cohomology(koszul(r, {d})).parts) {
                    (void)k;
                    ok = ok && support(h).subset_of(vd);
                }
            }
        }
        gate.report(2, "koszul support bound", ok, elapsed(t0), 1);
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("oracle_agreement", {4, 12, 30}, 500));
        gate.report(3, "coaisle oracle agreement", rep.failed == 0, elapsed(t0), 300,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("round_trip", {12, 30}, 0));
        gate.report(4, "generator round trip", rep.failed == 0 && rep.cases == 150, elapsed(t0),
                    60, suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("minimality", {4, 12, 30}, 0));
        gate.report(5, "filtration minimality", rep.failed == 0, elapsed(t0), 120,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("generation", {4, 12, 30, 36}, 0));
        gate.report(6, "generation identities", rep.failed == 0, elapsed(t0), 10,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("truncation", {4, 12, 30, 36}, 500));
        gate.report(7, "truncation triangles", rep.failed == 0, elapsed(t0), 300,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("stalk_hom", {4, 12, 30, 36}, 200));
        gate.report(8, "stalk hom bijection", rep.failed == 0, elapsed(t0), 120,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("envelope", {4, 12, 30, 36}, 50));
        gate.report(9, "injective coresolution", rep.failed == 0, elapsed(t0), 180,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("tower", {12}, 100));
        gate.report(10, "cech-koszul colimit", rep.failed == 0, elapsed(t0), 60,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("duality", {4, 12, 30}, 500));
        gate.report(11, "co-t-structure duality", rep.failed == 0, elapsed(t0), 180,
                    suite_extra(rep));
    }

    {
        auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep = run_suite(suite_for("rigidity", {4, 12, 30, 36}, 25));
        gate.report(12, "aisle tensor rigidity", rep.failed == 0 && rep.cases == 100,
                    elapsed(t0), 60, suite_extra(rep));
    }

    std::printf("%s: %d of 12 criteria failed\n", gate.failures ? "FAIL" : "PASS",
                gate.failures);
    return gate.failures ? 1 : 0;
}
