#include "spikeslab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>

namespace spikeslab {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::vector<double> parse_observations(std::istream& in, const std::string& source) {
    std::vector<double> x;
    std::string line;
    int lineno = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string field = trim(line);
        if (field.empty()) continue;
        if (first_content) {
            first_content = false;
            if (field == "x" || field == "\"x\"") continue;
        }
        if (field.find(',') != std::string::npos) throw ParseError(source, lineno, "expected a single column");
        double v = 0.0;
        const char* begin = field.data();
        const char* end = begin + field.size();
        if (*begin == '+') ++begin;
        const auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc() || ptr != end) throw ParseError(source, lineno, "not a number: '" + field + "'");
        if (!std::isfinite(v)) throw ParseError(source, lineno, "non-finite value");
        x.push_back(v);
    }
    if (x.empty()) throw ParseError(source, lineno, "no observations");
    return x;
}

std::vector<double> read_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return parse_observations(in, path);
}

void write_result_table_csv(std::ostream& out, const ResultTable& table) {
    out << "estimator,p_n,A,q,mean_loss,se,reps\n";
    out << std::setprecision(10);
    for (const ResultCell& c : table.cells)
        out << to_string(c.estimator) << ',' << c.p_n << ',' << c.amplitude << ',' << c.q << ',' << c.mean_loss << ','
            << c.se << ',' << c.reps << '\n';
}

nlohmann::json to_json(const ResultTable& table) {
    nlohmann::json cells = nlohmann::json::array();
    for (const ResultCell& c : table.cells)
        cells.push_back({{"estimator", to_string(c.estimator)},
                         {"p_n", c.p_n},
                         {"A", c.amplitude},
                         {"q", c.q},
                         {"mean_loss", c.mean_loss},
                         {"se", c.se},
                         {"reps", c.reps},
                         {"complete", c.complete}});
    return {{"cells", cells},
            {"identity_audit",
             {{"fits", table.audit.fits},
              {"violations", table.audit.violations},
              {"worst_dimension_residual", table.audit.worst_dimension},
              {"worst_mean_residual", table.audit.worst_mean}}},
            {"failures", table.failures}};
}

nlohmann::json to_json(const PosteriorSummary& s) {
    nlohmann::json pmf = nlohmann::json::array();
    for (double v : s.dim_log_pmf) pmf.push_back(finite_or_null(v));
    return {{"n", s.n()},
            {"slab", {{"family", to_string(s.slab.family)}, {"scale", s.slab.scale}, {"shape", s.slab.shape}}},
            {"log_partition", s.log_partition},
            {"dim_log_pmf", pmf},
            {"inclusion_prob", s.inclusion_prob},
            {"exclusion_prob", s.exclusion_prob},
            {"mean", s.mean},
            {"median", s.median},
            {"credible_lo", s.credible_lo},
            {"credible_hi", s.credible_hi},
            {"levels", s.levels},
            {"expected_dimension", s.expected_dimension()}};
}

void write_intervals_csv(std::ostream& out, const std::vector<IntervalRecord>& rows) {
    out << "index,x,median,lo,hi,inclusion_prob\n";
    out << std::setprecision(12);
    for (const IntervalRecord& r : rows)
        out << r.index << ',' << r.x << ',' << r.median << ',' << r.lo << ',' << r.hi << ',' << r.inclusion_prob
            << '\n';
}

nlohmann::json to_json(const std::vector<IntervalRecord>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const IntervalRecord& r : rows)
        out.push_back({{"index", r.index},
                       {"x", r.x},
                       {"median", r.median},
                       {"lo", r.lo},
                       {"hi", r.hi},
                       {"inclusion_prob", r.inclusion_prob}});
    return out;
}

nlohmann::json to_json(const DimensionCheckReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) rows.push_back({{"M", r.m}, {"mean_tail_mass", r.mean_tail_mass}, {"se", r.se}});
    return {{"rows", rows},
            {"smallest_M", report.smallest_m ? nlohmann::json(*report.smallest_m) : nlohmann::json(nullptr)}};
}

nlohmann::json to_json(const ContractionCheckReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back(
            {{"p_n", r.p_n}, {"mean_risk", r.mean_risk}, {"se", r.se}, {"rate", r.rate}, {"ratio", r.ratio}});
    return {{"rows", rows}, {"ratio_spread", report.ratio_spread}, {"bounded", report.bounded}};
}

nlohmann::json to_json(const std::vector<ShrinkageRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows)
        out.push_back({{"A", r.amplitude},
                       {"laplace_risk", r.laplace_risk},
                       {"gaussian_risk", r.gaussian_risk},
                       {"ratio", r.ratio}});
    return out;
}

}  // namespace spikeslab
