#pragma once

#include <cstdint>
#include <json.hpp>

#include "tslab/tstructure.hpp"

namespace tslab {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t bound);  // uniform-ish in [0, bound); 0 if bound = 0
};
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

// Bounded complex with coordinates of ≤ max_factors cyclic factors and
// differentials drawn from the exact solution space of d∘d = 0.
Complex random_complex(const CyclicRing& ring, int degree_lo, int degree_hi,
                       std::size_t max_factors, std::uint64_t seed);

std::vector<ThomasonFiltration> enumerate_filtrations(const CyclicRing& ring, int lo, int hi,
                                                      bool include_neg_inf,
                                                      bool include_pos_inf);

struct SuiteConfig {
    SuiteConfig();  // selects every property family

    std::vector<long long> rings{4, 12, 30};
    int window_lo = -2, window_hi = 2;
    std::size_t corpus = 500;   // random complexes per ring
    std::uint64_t seed = 1;
    std::vector<std::string> properties;  // empty runs zero cases
    int jobs = 1;
    int degree_lo = -2, degree_hi = 1;    // random complex degree range
    std::size_t max_factors = 2;
};

struct SuiteReport {
    std::string rings;
    std::size_t cases = 0, passed = 0, failed = 0;
    std::vector<nlohmann::json> exhibits;
    std::uint64_t seed = 0;
    long long wall_ms = 0;
};

const std::vector<std::string>& suite_property_names();
SuiteReport run_suite(const SuiteConfig& config);

nlohmann::json to_json(const SuiteConfig& c);
SuiteConfig suite_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SuiteReport& r);

// Pinned worked examples, each recomputed by element enumeration.
struct Fixture {
    std::string name;
    std::string detail;
    bool pass = false;
};
std::vector<Fixture> worked_examples();

}  // namespace tslab
