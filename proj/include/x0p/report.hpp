#ifndef X0P_REPORT_HPP
#define X0P_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "x0p/density.hpp"
#include "x0p/factors.hpp"

// Report emitters. Every emitter is byte-deterministic for fixed inputs:
// stable row order, fixed number formatting, no locale dependence.

namespace x0p {

enum class TableFormat { Md, Csv, Json };

TableFormat parse_format(const std::string& name);  // "md" | "csv" | "json"

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table(const Table& table, TableFormat format);

// N, psi, nu2, nu3, nu_inf, g0, g0+ (the last for primes > 3 only).
Table genus_table(const std::vector<std::int64_t>& levels);

// The residual dim-2 table, in the column order p, g, g+, dim, exponent,
// Riemann-Hurwitz degree cap.
Table residual_table(const std::vector<ResidualRow>& rows);

Table morphism_table(const std::vector<MorphismClassification>& classifications);

Table degree_table(const std::vector<DensityVerdict>& verdicts);

// Evidence chains verbatim, for downstream audit.
std::string degree_report_json(const std::vector<DensityVerdict>& verdicts);

struct SplitStats {
  std::int64_t range_lo = 0;
  std::int64_t range_hi = 0;
  std::int64_t primes = 0;
  std::int64_t with_data = 0;
  std::int64_t satisfied = 0;
  std::int64_t skipped = 0;
};

std::string split_stats_line(const SplitStats& stats);

}  // namespace x0p

#endif
