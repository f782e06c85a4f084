#pragma once

#include <string>
#include <utility>
#include <vector>

namespace uhrfrac::cli {

/// Exit codes shared by every subcommand.
enum ExitCode {
    kOk = 0,
    kInputError = 1,
    kNoConvergence = 2,
    kContractionFailure = 3,
    kResidualFailure = 4,
};

/// Ordered key/value run summary; serializes to aligned text and to a
/// two-row CSV with a deterministic field order.
class RunReport {
public:
    void add(std::string key, std::string value);
    void add_real(std::string key, double value);
    void add_int(std::string key, long value);

    const std::vector<std::pair<std::string, std::string>>& fields() const {
        return fields_;
    }
    std::string to_text() const;
    std::string to_csv() const;

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

/// Entry point used by main() and by the integration tests; returns the
/// process exit code.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace uhrfrac::cli
