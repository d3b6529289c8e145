#pragma once

#include "qrsk/polymers.hpp"
#include "qrsk/scalar.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qrsk {

struct SuiteFailure {
    std::string instance;
    std::string lhs;
    std::string rhs;
};

struct SuiteReport {
    std::string suite;
    long cases = 0;
    // Total number of failing cases; only the first few are listed.
    long failed = 0;
    std::vector<SuiteFailure> failures;

    bool ok() const { return failed == 0; }
};

// Overrides for the verification grids. Empty or zero fields keep the
// suite's own defaults.
struct SuiteOptions {
    std::optional<Rational> q;
    std::vector<Rational> alpha;
    std::vector<Rational> beta;
    std::vector<Rational> a;
    long max_part = 0;
    long levels = 0;
    long steps = 0;
    std::uint64_t seed = 1;
    long max_listed = 20;
};

const std::vector<std::string>& suite_names();
// Throws std::invalid_argument for an unknown suite or bad options.
SuiteReport run_suite(const std::string& suite, const SuiteOptions& opt);

std::string suite_report_json(const SuiteReport& rep);
std::string scaling_report_json(const ScalingReport& rep);

// The qrsk command line. Returns the process exit code: 0 success, 1
// verification failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace qrsk
