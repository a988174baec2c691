#pragma once

#include "core/jsonio.hpp"
#include "core/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace decoy::metrics {

struct GroupStats {
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0; // population standard deviation
};

GroupStats stats_of(const std::vector<double>& xs);

struct MetricRow {
    std::string metric;
    GroupStats t, ct, overall; // overall covers the union of both teams
};

// Fidelity summary: one row per metric with per-team and overall mean/std,
// plus named scalar results that have no team split (agreement fractions,
// correlations).
struct MetricReport {
    std::vector<MetricRow> rows;
    std::map<std::string, double> scalars;
};

// Collects per-sample values tagged by team and reduces them to a report.
// Metric rows keep first-insertion order.
class MetricAccumulator {
  public:
    void add(const std::string& metric, Team team, double value);
    void set_scalar(const std::string& name, double value);
    MetricReport finalize() const;

  private:
    std::vector<std::string> m_order;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> m_samples;
    std::map<std::string, double> m_scalars;
};

// Fixed-width text table, one metric per row, mean +/- std per group.
std::string format_report(const MetricReport& r);

json report_to_json(const MetricReport& r);
MetricReport report_from_json(const json& j, const std::string& ctx);

} // namespace decoy::metrics
