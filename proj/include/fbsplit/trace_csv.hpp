#pragma once

#include <filesystem>
#include <vector>

#include "fbsplit/solver.hpp"

namespace fbsplit {

struct TraceRow {
    long iter;
    double snr_db;
    double objective;
    double residual_m_norm;
    double elapsed_s;
};

/// Header `iter,snr_db,objective,residual_m_norm,elapsed_s`, 9 significant
/// digits, LF line endings, +inf printed as `inf`.
void write_trace_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path);

std::vector<TraceRow> trace_rows(const IterationTrace& trace);

}  // namespace fbsplit
