#include "fbsplit/trace_csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "fbsplit/errors.hpp"

namespace fbsplit {

namespace {

std::string format_real(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

void write_trace_csv(const std::vector<TraceRow>& rows, const std::filesystem::path& path) {
    if (rows.empty()) throw std::invalid_argument("write_trace_csv: no rows");
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!out) throw IoError("write_trace_csv: cannot open " + path.string());
    out << "iter,snr_db,objective,residual_m_norm,elapsed_s\n";
    for (const auto& r : rows) {
        out << r.iter << ',' << format_real(r.snr_db) << ',' << format_real(r.objective)
            << ',' << format_real(r.residual_m_norm) << ',' << format_real(r.elapsed_s)
            << '\n';
    }
    if (!out) throw IoError("write_trace_csv: write failed for " + path.string());
}

std::vector<TraceRow> trace_rows(const IterationTrace& trace) {
    std::vector<TraceRow> rows;
    rows.reserve(trace.records.size());
    for (const auto& rec : trace.records)
        rows.push_back({rec.iter, rec.snr_db, rec.objective, rec.residual_m_norm,
                        rec.elapsed_s});
    return rows;
}

}  // namespace fbsplit
