#pragma once

#include <divlen/geometry.hpp>

#include <map>
#include <string>
#include <vector>

namespace divlen::fixtures {

struct FixtureInfo {
    std::string id;
    std::string file;
    long q = 2;
    long k = 0;
    long n = 0;               // columns in the file
    long effective_n = 0;     // non-zero columns
    Int delta;                // claimed divisibility
    bool projective = true;
    std::map<long, Int> enumerator;  // non-zero weights, when printed
    std::map<long, Int> spectrum;    // expected a_i entries, when printed
    std::string note;
};

const std::vector<FixtureInfo>& registry();
const FixtureInfo& info(const std::string& id);

geom::GeneratorMatrix load_matrix(const std::string& path);
geom::GeneratorMatrix load_fixture(const std::string& id);

struct FixtureReport {
    std::string id;
    bool ok = false;
    long n = 0;
    long effective_n = 0;
    long rank = 0;
    long max_multiplicity = 0;
    Int max_divisibility;
    bool length_ok = false;
    bool rank_ok = false;
    bool projective_ok = false;
    bool divisible_ok = false;
    bool enumerator_ok = false;
    bool spectrum_ok = false;
    std::map<long, Int> enumerator;  // computed non-zero weights
};

// Re-computes length, dimension, projectivity, divisibility and, when a
// reference value is recorded, the full weight enumerator or spectrum.
FixtureReport verify_fixture(const std::string& id);

}  // namespace divlen::fixtures
