#include <gtest/gtest.h>

#include "gdet/json_io.hpp"
#include "test_support.hpp"

using namespace gdet;
using gdet::json::Json;

namespace {

const Field Q = Field::rationals();
const Field P = Field::prime(10007);

}  // namespace

TEST(JsonIo, FieldRoundTrip) {
  EXPECT_EQ(json::field_to_json(Q).dump(), "\"Q\"");
  EXPECT_EQ(json::field_to_json(P).dump(), "{\"p\":10007}");
  EXPECT_EQ(json::field_from_json(Json::parse("{\"p\": 13}")), Field::prime(13));
  EXPECT_EQ(code_of([] { json::field_from_json(Json::parse("\"R\"")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { json::field_from_json(Json::parse("{\"p\": 15}")); }), ErrorCode::InvalidField);
}

TEST(JsonIo, ScalarsAreExactStringsOrResidues) {
  EXPECT_EQ(json::scalar_to_json(Scalar::parse(Q, "-2/6")).dump(), "\"-1/3\"");
  EXPECT_EQ(json::scalar_to_json(Scalar(P, -1)).dump(), "10006");
  EXPECT_EQ(json::scalar_from_json(Q, Json(7)), Scalar(Q, 7));
  EXPECT_EQ(json::scalar_from_json(Q, Json("3/4")), Scalar::parse(Q, "3/4"));
  EXPECT_EQ(code_of([] { json::scalar_from_json(Q, Json("2/4")); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { json::scalar_from_json(Q, Json(0.5)); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { json::scalar_from_json(P, Json(10007)); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { json::scalar_from_json(P, Json(-1)); }), ErrorCode::ParseError);
}

TEST(JsonIo, MatrixRoundTrip) {
  const auto m = DenseMatrix::from_rows(Q, {{1, -2, 0}, {4, 5, 6}}).scaled(Scalar::parse(Q, "1/2"));
  const auto j = json::matrix_to_json(m);
  EXPECT_EQ(j.dump(), R"({"field":"Q","rows":2,"cols":3,"entries":[["1/2","-1","0"],["2","5/2","3"]]})");
  EXPECT_EQ(json::matrix_from_json(j), m);
  EXPECT_EQ(code_of([] { json::matrix_from_json(Json::parse(R"({"field":"Q","rows":2,"cols":1,"entries":[["1"]]})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { json::matrix_from_json(Json::parse(R"({"field":"Q","rows":1,"entries":[["1"]]})")); }),
            ErrorCode::ParseError);
}

TEST(JsonIo, OperatorAndSpecRoundTrip) {
  const auto [t, e] = sample_member(3, P, 5);
  const auto tj = json::operator_to_json(t);
  EXPECT_EQ(tj["vec"], "row-major");
  EXPECT_EQ(json::operator_from_json(Json::parse(tj.dump())), t);
  const auto sj = json::spec_to_json(e.spec());
  EXPECT_EQ(json::spec_from_json(P, Json::parse(sj.dump())), e.spec());
  EXPECT_EQ(sj["sigma"].size(), 3u);
  EXPECT_GE(sj["sigma"][0].get<int>(), 1);
}

TEST(JsonIo, SpecValidation) {
  auto j = json::spec_to_json(MonomialSpec::identity(Q, 3));
  j["sigma"] = Json::array({1, 1, 2});
  EXPECT_EQ(code_of([&] { json::spec_from_json(Q, j); }), ErrorCode::BadPermutation);
  j = json::spec_to_json(MonomialSpec::identity(Q, 3));
  j["l"][1] = "0";
  EXPECT_EQ(code_of([&] { json::spec_from_json(Q, j); }), ErrorCode::ZeroDiagonal);
  j.erase("tau");
  EXPECT_EQ(code_of([&] { json::spec_from_json(Q, j); }), ErrorCode::ParseError);
}

TEST(JsonIo, VerdictShape) {
  const auto t = LinearOperator::identity(Q, 3);
  const auto params = GenDetParams::make(Q, 1, 2);
  const auto j = json::verdict_to_json(membership_symbolic(t, params), analyze_operator(t, params));
  EXPECT_EQ(j["member"], true);
  EXPECT_EQ(j["evidence"], "symbolic");
  EXPECT_TRUE(j["witness"].is_null());
  EXPECT_EQ(j["canonical"]["sigma"], Json::array({1, 2, 3}));

  const auto r = membership_randomized(LinearOperator::identity(P, 5), GenDetParams::make(P, 1, 2), 20, 1);
  const auto rj = json::verdict_to_json(r);
  EXPECT_EQ(rj["evidence"]["randomized"]["trials"], 20);
  EXPECT_EQ(rj["evidence"]["randomized"]["error_bound"], "(5/10007)^20");
  EXPECT_TRUE(rj["canonical"].is_null());
}

TEST(JsonIo, ViolationRecordUsesOneBasedWitness) {
  const Violation v{ErrorCode::NotMonomial, "detail", UnitImageGrid::Witness{0, 2, 3}};
  EXPECT_EQ(json::violation_to_json(v).dump(),
            R"({"violation":"NotMonomial","detail":"detail","witness":{"i":1,"j":3,"nonzeros":3}})");
}

TEST(JsonIo, ReportKeys) {
  LabReport r;
  r.lemma = "x";
  r.checked = 3;
  const auto j = json::report_to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"lemma", "space", "checked", "hypothesis_hits", "violations", "ms", "notes", "pass"}));
  EXPECT_EQ(j["pass"], true);
}
