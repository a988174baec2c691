#include "metrics/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace decoy::metrics {

GroupStats stats_of(const std::vector<double>& xs) {
    GroupStats s;
    s.n = int(xs.size());
    if(xs.empty())
        return s;
    for(double x : xs)
        s.mean += x;
    s.mean /= double(xs.size());
    double var = 0.0;
    for(double x : xs)
        var += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(var / double(xs.size()));
    return s;
}

void MetricAccumulator::add(const std::string& metric, Team team, double value) {
    auto it = m_samples.find(metric);
    if(it == m_samples.end()) {
        m_order.push_back(metric);
        it = m_samples.emplace(metric, std::pair<std::vector<double>, std::vector<double>>{})
                 .first;
    }
    (team == Team::T ? it->second.first : it->second.second).push_back(value);
}

void MetricAccumulator::set_scalar(const std::string& name, double value) {
    m_scalars[name] = value;
}

MetricReport MetricAccumulator::finalize() const {
    MetricReport r;
    for(const std::string& name : m_order) {
        const auto& [ts, cts] = m_samples.at(name);
        MetricRow row;
        row.metric = name;
        row.t = stats_of(ts);
        row.ct = stats_of(cts);
        std::vector<double> all = ts;
        all.insert(all.end(), cts.begin(), cts.end());
        row.overall = stats_of(all);
        r.rows.push_back(std::move(row));
    }
    r.scalars = m_scalars;
    return r;
}

namespace {

std::string cell(const GroupStats& s) {
    if(s.n == 0)
        return "-";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f +/- %.3f", s.mean, s.stddev);
    return buf;
}

} // namespace

std::string format_report(const MetricReport& r) {
    std::ostringstream os;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-24s %-20s %-20s %-20s\n", "metric", "T", "CT", "Overall");
    os << buf;
    os << std::string(86, '-') << "\n";
    for(const MetricRow& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%-24s %-20s %-20s %-20s\n", row.metric.c_str(),
                      cell(row.t).c_str(), cell(row.ct).c_str(), cell(row.overall).c_str());
        os << buf;
    }
    if(!r.scalars.empty()) {
        os << "\n";
        for(const auto& [name, v] : r.scalars) {
            std::snprintf(buf, sizeof buf, "%-24s %.3f\n", name.c_str(), v);
            os << buf;
        }
    }
    return os.str();
}

namespace {

json stats_to_json(const GroupStats& s) {
    return json{{"n", s.n}, {"mean", s.mean}, {"stddev", s.stddev}};
}

GroupStats stats_from_json(const json& j, const std::string& ctx) {
    GroupStats s;
    s.n = field_as<int>(j, "n", ctx);
    s.mean = field_as<double>(j, "mean", ctx);
    s.stddev = field_as<double>(j, "stddev", ctx);
    return s;
}

} // namespace

json report_to_json(const MetricReport& r) {
    json rows = json::array();
    for(const MetricRow& row : r.rows) {
        rows.push_back(json{{"metric", row.metric},
                            {"T", stats_to_json(row.t)},
                            {"CT", stats_to_json(row.ct)},
                            {"Overall", stats_to_json(row.overall)}});
    }
    json scalars = json::object();
    for(const auto& [name, v] : r.scalars)
        scalars[name] = v;
    return json{{"format_version", 1}, {"rows", rows}, {"scalars", scalars}};
}

MetricReport report_from_json(const json& j, const std::string& ctx) {
    require(j.value("format_version", 0) == 1, Errc::parse, ctx + ": unsupported report version");
    MetricReport r;
    for(const json& jr : j.at("rows")) {
        MetricRow row;
        row.metric = field_as<std::string>(jr, "metric", ctx);
        row.t = stats_from_json(jr.at("T"), ctx);
        row.ct = stats_from_json(jr.at("CT"), ctx);
        row.overall = stats_from_json(jr.at("Overall"), ctx);
        r.rows.push_back(std::move(row));
    }
    if(j.contains("scalars"))
        for(auto it = j.at("scalars").begin(); it != j.at("scalars").end(); ++it)
            r.scalars[it.key()] = it.value().get<double>();
    return r;
}

} // namespace decoy::metrics
