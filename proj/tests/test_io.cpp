#include "spikeslab/io.hpp"

#include "spikeslab/special.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace spikeslab;

namespace {

std::vector<double> parse(const std::string& text) {
    std::istringstream in(text);
    return parse_observations(in, "mem");
}

int error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("parsing observations") {
    CHECK(parse("1.5\n-2\n3e-1\n") == std::vector<double>{1.5, -2.0, 0.3});
    CHECK(parse("x\n1\n2\n") == std::vector<double>{1.0, 2.0});
    CHECK(parse("\n  0.25 \r\n\n+4\n") == std::vector<double>{0.25, 4.0});
    CHECK(parse("1") == std::vector<double>{1.0});

    CHECK(error_line("1\n2\nabc\n") == 3);
    CHECK(error_line("1\n\n1,2\n") == 3);
    CHECK(error_line("1\nnan\n") == 2);
    CHECK(error_line("inf\n") == 1);
    CHECK(error_line("1.5x\n") == 1);
    CHECK(error_line("x\n1\nx\n") == 3);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("x\n\n"), ParseError);
    CHECK_THROWS_AS(read_observations("/nonexistent/spikeslab.txt"), std::runtime_error);

    try {
        parse("1\nzz\n");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("mem:2:") == 0);
    }
}

TEST_CASE("result table serialisation") {
    ResultTable t;
    t.cells.push_back({Estimator::PMed2, 25, 3.0, 2.0, 120.5, 2.25, 100, true});
    t.cells.push_back({Estimator::HTO, 50, 4.0, 1.0, 79.0, 1.0, 99, false});
    t.failures.push_back("p_n=50 A=4 rep=7: boom");
    std::ostringstream csv;
    write_result_table_csv(csv, t);
    CHECK(csv.str() == "estimator,p_n,A,q,mean_loss,se,reps\nPMed2,25,3,2,120.5,2.25,100\nHTO,50,4,1,79,1,99\n");

    const nlohmann::json j = to_json(t);
    CHECK(j["cells"].size() == 2);
    CHECK(j["cells"][1]["complete"] == false);
    CHECK(j["failures"][0] == "p_n=50 A=4 rep=7: boom");
    CHECK(j["identity_audit"]["violations"] == 0);
}

TEST_CASE("posterior summary JSON") {
    const PosteriorSummary s = fit(std::vector<double>{0.0, 6.0},
                                   DimensionPrior::custom({0.0, 0.0, kNegInf}), SlabPrior::laplace(1.0));
    const nlohmann::json j = to_json(s);
    CHECK(j["n"] == 2);
    CHECK(j["dim_log_pmf"][2].is_null());
    CHECK(j["dim_log_pmf"][0].is_number());
    CHECK(j["slab"]["family"] == "laplace");
    for (const char* key : {"inclusion_prob", "exclusion_prob", "mean", "median", "credible_lo", "credible_hi"}) CHECK(j[key].size() == 2);
    CHECK(j["levels"][0] == 0.025);
    CHECK(j["expected_dimension"].get<double>() == doctest::Approx(s.inclusion_prob[0] + s.inclusion_prob[1]));
    // round trip through text keeps full precision
    CHECK(nlohmann::json::parse(j.dump())["mean"][1].get<double>() == s.mean[1]);
}

TEST_CASE("interval records") {
    const std::vector<IntervalRecord> rows{{0, 1.5, 0.0, -0.5, 2.5, 0.4}, {1, -3.0, -2.0, -4.0, 0.0, 0.9}};
    std::ostringstream csv;
    write_intervals_csv(csv, rows);
    CHECK(csv.str() == "index,x,median,lo,hi,inclusion_prob\n0,1.5,0,-0.5,2.5,0.4\n1,-3,-2,-4,0,0.9\n");
    const nlohmann::json j = to_json(rows);
    CHECK(j[1]["median"] == -2.0);
    CHECK(j[0]["inclusion_prob"] == 0.4);
}

TEST_CASE("theory-check reports") {
    DimensionCheckReport d;
    d.rows.push_back({1.0, 0.2, 0.01});
    CHECK(to_json(d)["smallest_M"].is_null());
    d.smallest_m = 1.0;
    CHECK(to_json(d)["smallest_M"] == 1.0);

    ContractionCheckReport c{{{10, 30.0, 1.0, 38.0, 30.0 / 38.0}}, 1.0, true};
    CHECK(to_json(c)["rows"][0]["p_n"] == 10);
    CHECK(to_json(c)["bounded"] == true);

    CHECK(to_json(std::vector<ShrinkageRow>{{7.0, 100.0, 250.0, 2.5}})[0]["ratio"] == 2.5);
}
