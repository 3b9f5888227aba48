#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "natvert/constructions.hpp"
#include "natvert/vertex.hpp"

namespace natvert {

inline constexpr const char* kVersion = "0.1.0";

struct Config {
    int field_order = 2; // order of the base field GF(2^k)
    std::uint64_t budget_cosets = 50'000'000;
    std::uint64_t budget_elements = 1u << 20;
    std::uint64_t budget_endo = 1u << 20;
    std::uint64_t seed = 0;
    bool include_sn = false;
    bool normalize_timings = false;

    int field_k() const;
    VertexOptions vertex_options() const;
};

struct ReportRow {
    int n = 0;
    std::vector<int> parts;
    CaseTag tag = CaseTag::odd;
    int dim_e = 0;
    VertexReport vertex;
    std::optional<VertexReport> sym;
    std::vector<CheckEntry> checks; // the full per-check ledger
    double seconds = 0;

    bool all_pass() const;
};

ReportRow verify_n(int n, const Config& config);

struct RangeResult {
    std::vector<ReportRow> rows;
    bool all_pass = false;
};

RangeResult verify_range(int from, int to, const Config& config);

std::string report_json(const RangeResult& result, const Config& config);
std::string report_text(const RangeResult& result, const Config& config);

struct SelftestResult {
    std::vector<CheckEntry> checks;
    bool all_pass = false;
};

SelftestResult selftest(const Config& config);

// Materializes named generators, bases and action matrices for one n into
// text fixture files under dir; returns the file names written.
std::vector<std::string> dump_fixtures(int n, const std::string& dir,
                                       const Config& config);

} // namespace natvert
