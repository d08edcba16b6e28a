#pragma once

#include "essig/tensor.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace essig::checks {

struct CheckReport {
    explicit CheckReport(std::string suite) : name(std::move(suite)) {}

    std::string name;
    bool passed = true;
    std::vector<std::string> details;
    nlohmann::json metrics = nlohmann::json::object();

    void fail(std::string message) {
        passed = false;
        details.push_back("FAIL: " + std::move(message));
    }
    void note(std::string message) { details.push_back(std::move(message)); }
};

struct CheckConfig {
    int truncation = 6;
    std::size_t paths = 100;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// All suite names accepted by run_check.
std::span<const std::string_view> suite_names();

/// Throws UsageError for an unknown suite name.
CheckReport run_check(std::string_view suite, const CheckConfig& config);

CheckReport check_residual(int truncation);
CheckReport check_boundary_factor(int truncation);
CheckReport check_chen(std::size_t paths, int truncation, std::uint64_t seed);
CheckReport check_rotation(int truncation);
CheckReport check_meanvalue();
CheckReport check_lattice_mc(int truncation, std::size_t walks, std::uint64_t seed);
CheckReport check_interval_oracle(int truncation);

/// Largest |pi^u pi^v - sum_{w in u sh v} pi^w| over nonempty words with
/// |u| + |v| <= N. Zero (exactly, for rationals) on group-like tensors.
template <Scalar T>
T shuffle_defect(const TruncatedTensor<T>& sig);

/// All words in the shuffle product of u and v, with multiplicity.
std::vector<Word> shuffles(const Word& u, const Word& v);

}  // namespace essig::checks
