#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperwalk/io.hpp"

namespace hyperwalk {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0;     // observed deviation or measurement
    double tolerance = 0;
    std::string detail;
};

struct CheckSuite {
    std::vector<CheckResult> results;

    bool passed() const;
    void add(std::string name, double value, double tolerance, std::string detail = {});
    void add_flag(std::string name, bool ok, std::string detail = {});
};

Json to_json(const CheckSuite& suite);

/// Structural invariants of one instance: row sums, stationarity,
/// coupling identities for t <= 10, matching nonzero spectra and (for
/// undirected inputs) the bipartite-lift walk.
CheckSuite check_instance(const AnyHypergraph& h);

/// Invariants over generated families, random graphs and small Monte Carlo
/// runs. Deterministic given the seed.
CheckSuite run_invariant_suite(std::uint64_t seed, std::size_t trials);

} // namespace hyperwalk
