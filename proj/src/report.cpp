#include "x0p/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "x0p/arith.hpp"
#include "x0p/quadforms.hpp"

namespace x0p {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_escape(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

TableFormat parse_format(const std::string& name) {
  if (name == "md") return TableFormat::Md;
  if (name == "csv") return TableFormat::Csv;
  if (name == "json") return TableFormat::Json;
  throw std::invalid_argument("unknown format '" + name + "' (expected md, csv or json)");
}

std::string render_table(const Table& table, TableFormat format) {
  std::string out;
  switch (format) {
    case TableFormat::Md: {
      out += "|";
      for (const auto& c : table.columns) out += " " + c + " |";
      out += "\n|";
      for (std::size_t i = 0; i < table.columns.size(); ++i) out += "---|";
      out += "\n";
      for (const auto& row : table.rows) {
        out += "|";
        for (const auto& v : row) out += " " + v + " |";
        out += "\n";
      }
      break;
    }
    case TableFormat::Csv: {
      for (std::size_t i = 0; i < table.columns.size(); ++i) out += (i ? "," : "") + csv_escape(table.columns[i]);
      out += "\n";
      for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_escape(row[i]);
        out += "\n";
      }
      break;
    }
    case TableFormat::Json: {
      ordered_json arr = ordered_json::array();
      for (const auto& row : table.rows) {
        ordered_json obj;
        for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = row[i];
        arr.push_back(obj);
      }
      out = arr.dump(2);
      out += "\n";
      break;
    }
  }
  return out;
}

Table genus_table(const std::vector<std::int64_t>& levels) {
  Table t;
  t.columns = {"N", "psi", "nu2", "nu3", "nu_inf", "genus", "genus_plus"};
  for (std::int64_t n : levels) {
    GenusProfile p = genus_profile(static_cast<std::uint64_t>(n));
    std::string gplus = "-";
    if (p.level.prime && n > 3) gplus = std::to_string(genus_x0_plus(static_cast<std::uint64_t>(n)));
    t.rows.push_back({std::to_string(n), std::to_string(p.psi), std::to_string(p.nu2), std::to_string(p.nu3),
                      std::to_string(p.nu_inf), std::to_string(p.genus), gplus});
  }
  return t;
}

Table residual_table(const std::vector<ResidualRow>& rows) {
  Table t;
  t.columns = {"p", "g", "g_plus", "dim_A", "exp_ker", "rh_cap"};
  for (const auto& r : rows) {
    t.rows.push_back({std::to_string(r.level), std::to_string(r.genus), std::to_string(r.genus_plus),
                      std::to_string(r.dim), std::to_string(r.kernel_exponent), std::to_string(r.rh_degree_cap)});
  }
  return t;
}

Table morphism_table(const std::vector<MorphismClassification>& classifications) {
  Table t;
  t.columns = {"p", "genus", "subsets", "kernel_bound", "involution", "genus2_table", "survivors", "unresolved",
               "verdict"};
  for (const auto& c : classifications) {
    std::int64_t kernel = 0, invol = 0, g2 = 0, surv = 0;
    for (const auto& v : c.verdicts) {
      switch (v.outcome) {
        case SubsetOutcome::RuledOutKernelBound: ++kernel; break;
        case SubsetOutcome::RuledOutInvolution: ++invol; break;
        case SubsetOutcome::RuledOutGenus2Table: ++g2; break;
        case SubsetOutcome::SurvivesQuotientMap: ++surv; break;
        case SubsetOutcome::NeedsKernelData: break;
      }
    }
    std::string verdict = c.only_quotient ? "only-quotient" : "needs-kernel-data";
    t.rows.push_back({std::to_string(c.level), std::to_string(c.genus), std::to_string(c.verdicts.size()),
                      std::to_string(kernel), std::to_string(invol), std::to_string(g2), std::to_string(surv),
                      std::to_string(c.unresolved.size()), verdict});
  }
  return t;
}

Table degree_table(const std::vector<DensityVerdict>& verdicts) {
  Table t;
  t.columns = {"p", "degree", "status", "rule", "inputs"};
  for (const auto& v : verdicts) {
    std::string rule = "-";
    std::string inputs;
    if (!v.evidence.empty()) {
      rule = rule_id_name(v.evidence.front().rule);
      for (const auto& [k, val] : v.evidence.front().inputs) {
        if (!inputs.empty()) inputs += "; ";
        inputs += k + "=" + val;
      }
    } else if (!v.missing_facts.empty()) {
      inputs = "missing: ";
      for (std::size_t i = 0; i < v.missing_facts.size(); ++i) inputs += (i ? "; " : "") + v.missing_facts[i];
    }
    t.rows.push_back(
        {std::to_string(v.level), std::to_string(v.degree), density_name(v.status), rule, inputs});
  }
  return t;
}

std::string degree_report_json(const std::vector<DensityVerdict>& verdicts) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : verdicts) {
    ordered_json obj;
    obj["level"] = v.level;
    obj["degree"] = v.degree;
    obj["status"] = density_name(v.status);
    ordered_json ev = ordered_json::array();
    for (const auto& e : v.evidence) {
      ordered_json item;
      item["rule"] = rule_id_name(e.rule);
      ordered_json inputs;
      for (const auto& [k, val] : e.inputs) inputs[k] = val;
      item["inputs"] = inputs;
      item["basis"] = e.basis;
      ev.push_back(item);
    }
    obj["evidence"] = ev;
    if (!v.missing_facts.empty()) obj["missing_facts"] = v.missing_facts;
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

std::string split_stats_line(const SplitStats& s) {
  char percent[32];
  double pct = s.with_data > 0 ? 100.0 * static_cast<double>(s.satisfied) / static_cast<double>(s.with_data) : 0.0;
  std::snprintf(percent, sizeof percent, "%.3f", pct);
  std::string out = "range=" + std::to_string(s.range_lo) + ".." + std::to_string(s.range_hi);
  out += " primes=" + std::to_string(s.primes);
  out += " with_data=" + std::to_string(s.with_data);
  out += " satisfied=" + std::to_string(s.satisfied);
  out += " failing=" + std::to_string(s.with_data - s.satisfied);
  out += " skipped=" + std::to_string(s.skipped);
  out += " percent=";
  out += percent;
  out += "\n";
  return out;
}

}  // namespace x0p
