#pragma once

// End-to-end reproduction of the robust-zero construction for the triangle
// law: every numeric claim becomes one named check, and every certificate
// produced along the way is collected into a single document.

#include <optional>
#include <string>
#include <vector>

#include "rz/certificate.hpp"

namespace rz {

struct Check {
    std::string name;
    int criterion;          // acceptance criterion the check belongs to
    std::string claim;
    std::string computed;
    std::string expected;
    bool pass;
};

struct VerificationReport {
    std::vector<Check> checks;
    CertificateDocument certificates;

    bool passed() const;
};

struct VerifyOptions {
    /// Replaces the three 1/3 weights of the triangle law when non-empty.
    std::vector<double> weights;
    /// Overrides every certification depth when set.
    std::optional<int> max_depth;
};

VerificationReport verify_paper(const VerifyOptions& options = {});

/// Fixed-width pass/fail table, one row per check, then an overall line.
std::string format_report(const VerificationReport& report);

/// 17 significant digits, enough to round-trip a double.
std::string decimal17(double v);

}  // namespace rz
