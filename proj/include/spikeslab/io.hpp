#pragma once

// Data-file parsing and result serialisation.

#include "spikeslab/harness.hpp"
#include "spikeslab/posterior.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace spikeslab {

/// Parse error carrying the 1-based line number of the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// One real per line, or a single-column CSV whose header is `x`. Blank
/// lines are skipped. Empty input is an error.
std::vector<double> parse_observations(std::istream& in, const std::string& source = "<input>");
std::vector<double> read_observations(const std::string& path);

/// Columns estimator,p_n,A,q,mean_loss,se,reps.
void write_result_table_csv(std::ostream& out, const ResultTable& table);
nlohmann::json to_json(const ResultTable& table);

/// Field names mirror PosteriorSummary; -inf log values become null.
nlohmann::json to_json(const PosteriorSummary& summary);

/// Columns index,x,median,lo,hi,inclusion_prob.
void write_intervals_csv(std::ostream& out, const std::vector<IntervalRecord>& rows);
nlohmann::json to_json(const std::vector<IntervalRecord>& rows);

nlohmann::json to_json(const DimensionCheckReport& report);
nlohmann::json to_json(const ContractionCheckReport& report);
nlohmann::json to_json(const std::vector<ShrinkageRow>& rows);

}  // namespace spikeslab
