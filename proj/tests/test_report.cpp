#include <gtest/gtest.h>

#include <random>

#include "dualweight/errors.hpp"
#include "dualweight/report.hpp"
#include "oracles.hpp"

using dw::QVector;
using dw::Rational;
using dw::RootSystem;
using nlohmann::json;

TEST(Report, FractionsAreStrings) {
  EXPECT_EQ(dw::to_json(Rational(-5, 3)), json("-5/3"));
  EXPECT_EQ(dw::to_json(Rational(4)), json("4"));
  EXPECT_EQ(dw::to_json(QVector{1, Rational(1, 2)}), json({"1", "1/2"}));
}

TEST(Report, RejectsNonFractions) {
  EXPECT_THROW(dw::rational_from_json(json(0.5)), dw::FormatError);
  EXPECT_THROW(dw::rational_from_json(json(3)), dw::FormatError);
  EXPECT_THROW(dw::rational_from_json(json("1/0")), dw::FormatError);
  EXPECT_THROW(dw::vector_from_json(json("1")), dw::FormatError);
}

TEST(Report, BuildTables) {
  const json a2 = dw::system_report(RootSystem::build("A2"));
  EXPECT_EQ(a2["schema"], 1);
  EXPECT_EQ(a2["weights"]["d"], json({"1", "1"}));
  const json a1 = dw::system_report(RootSystem::build("A1"));
  EXPECT_EQ(a1["weights"]["weighted"][0], json({"1"}));
  const json g2 = dw::system_report(RootSystem::build("G2"));
  EXPECT_EQ(g2["weights"]["d"], json({"3", "5/3"}));
  EXPECT_EQ(g2["positive_roots"].size(), 6u);
}

TEST(Report, SystemCsvHeader) {
  const std::string csv = dw::system_csv(RootSystem::build("A2"));
  EXPECT_EQ(csv, "root,d,coupling,weighted\n1,1,2/3 1/3,2/3 1/3\n2,1,1/3 2/3,1/3 2/3\n");
}

TEST(Report, EmptyVerifyReport) {
  const json r = dw::verify_report({});
  EXPECT_EQ(r["schema"], 1);
  EXPECT_TRUE(r["pass"].get<bool>());
  EXPECT_TRUE(r["rows"].empty());
  EXPECT_EQ(dw::verify_csv({}), "suite,anchor,system,alpha,subset_I,route,status,evidence,wall_time\n");
}

TEST(Report, TraceRoundTrip) {
  const auto t = dw::generate_trace(RootSystem::build("B3"), {1, 2, 0}, 15, 99);
  const json j = dw::trace_to_json(t);
  const auto back = dw::trace_from_json(json::parse(j.dump()));
  EXPECT_EQ(back.n0, t.n0);
  EXPECT_EQ(back.seed, t.seed);
  for (std::size_t l = 0; l < t.steps.size(); ++l) {
    EXPECT_EQ(back.steps[l].slope, t.steps[l].slope);
    EXPECT_EQ(back.steps[l].offset, t.steps[l].offset);
  }
  EXPECT_EQ(dw::trace_to_json(back), j);
}

TEST(Report, TamperedTraceRejected) {
  const auto t = dw::generate_trace(RootSystem::build("A3"), {0, 2}, 10, 5);
  json j = dw::trace_to_json(t);
  json bad_n0 = j;
  bad_n0["n0"] = t.n0 + 5;
  EXPECT_THROW(dw::trace_from_json(bad_n0), dw::FormatError);
  json bad_ray = j;
  bad_ray["rays"][0][0] = "17";
  EXPECT_THROW(dw::trace_from_json(bad_ray), dw::FormatError);
  json bad_level = j;
  bad_level["levels"][0]["offset"][0] = "1/7";
  EXPECT_THROW(dw::trace_from_json(bad_level), dw::FormatError);
  json missing = j;
  missing.erase("weights");
  EXPECT_THROW(dw::trace_from_json(missing), dw::FormatError);
}

// Fractions survive a JSON round trip exactly.
TEST(ReportProperty, FractionRoundTrip) {
  std::mt19937_64 gen(71);
  for (int it = 0; it < 500; ++it) {
    const QVector v = oracle::random_vector(gen, 1 + gen() % 6, 1000);
    EXPECT_EQ(dw::vector_from_json(json::parse(dw::to_json(v).dump())), v);
  }
}
