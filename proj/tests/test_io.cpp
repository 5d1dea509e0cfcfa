#include <gtest/gtest.h>

#include <sstream>

#include "mbs/fixtures.hpp"
#include "mbs/io.hpp"
#include "support.hpp"

using namespace mbs;
using namespace mbs::testing;

namespace {

std::string theta_text() { return serialize_surface(theta_fixture(3)); }

SchemaError expect_schema_error(const std::string& text) {
  try {
    parse_surface(text);
  } catch (const SchemaError& e) {
    return e;
  }
  ADD_FAILURE() << "no schema error for:\n" << text;
  return SchemaError("none", "", 0, 0, "");
}

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

}  // namespace

TEST(Io, RoundTripIsExact) {
  for (const auto& s : {theta_fixture(3), moebius_fixture(), quasi_fixture(), torus_complex()})
    EXPECT_EQ(parse_surface(serialize_surface(s)), s);
  for (const auto& s : random_corpus(40)) {
    EXPECT_EQ(parse_surface(serialize_surface(s)), s);
    EXPECT_EQ(serialize_surface(parse_surface(serialize_surface(s))), serialize_surface(s));
  }
}

TEST(Io, FormatTagPresent) {
  EXPECT_EQ(surface_to_json(theta_fixture(3))["format"], kFormatTag);
}

TEST(Io, DuplicateCircleIsRejected) {
  const auto err = expect_schema_error(replace_once(theta_text(), "\"R2@B1\",\n", "\"R1@B1\",\n"));
  EXPECT_EQ(err.rule(), "duplicate-circle");
  EXPECT_GT(err.line(), 1);
  EXPECT_GT(err.column(), 0);
}

TEST(Io, WrappingZeroIsRejected) {
  const auto text = theta_text();
  const auto err = expect_schema_error(replace_once(text, "\"wrapping\": 1", "\"wrapping\": 0"));
  EXPECT_EQ(err.rule(), "minimum");
  EXPECT_NE(err.path().find("wrapping"), std::string::npos);
  // The reported line is the one holding the offending value.
  std::istringstream lines(replace_once(text, "\"wrapping\": 1", "\"wrapping\": 0"));
  std::string line;
  for (int i = 0; i < err.line(); ++i) std::getline(lines, line);
  EXPECT_NE(line.find("\"wrapping\": 0"), std::string::npos);
}

TEST(Io, UnknownFieldAndSyntax) {
  EXPECT_EQ(expect_schema_error(replace_once(theta_text(), "{", "{\"extra\": 1,")).rule(), "unknown-field");
  const auto syntax = expect_schema_error("{\"format\": ");
  EXPECT_EQ(syntax.rule(), "syntax");
  EXPECT_EQ(syntax.line(), 1);
  EXPECT_EQ(expect_schema_error(replace_once(theta_text(), "mbs/1", "mbs/2")).rule(), "format");
}

TEST(Io, MoveJsonRoundTrip) {
  const std::vector<Move> moves{IxSite{"R1", IxKind::NormalAnnulus}, IxSite{"A", IxKind::QuasiNormalAnnulus},
                                IxSite{"M", IxKind::NormalMoebius},   XiChoice{"L", NormalSplit{1, 2}},
                                XiChoice{"L", QuasiSplit{0, 3}},      XiChoice{"L", MoebiusSplit{2}},
                                IhSite{"R3"}};
  for (const auto& m : moves) EXPECT_EQ(move_from_json(nlohmann::json::parse(to_json(m).dump())), m);
}

TEST(Io, RecordJsonRoundTrip) {
  const auto theta = theta_fixture(4);
  MoveRecord record = empty_record(theta);
  auto s = record_move(record, theta, IxSite{"R1", IxKind::NormalAnnulus});
  record_move(record, s, enumerate_xi(s, s.loci()[0].id).back());
  EXPECT_EQ(record_from_json(nlohmann::json::parse(to_json(record).dump())), record);
}

TEST(Io, HomologyJson) {
  HomologyGroup g{1, {4}};
  const auto j = to_json(g);
  EXPECT_EQ(j["betti"], 1);
  EXPECT_EQ(j["text"], "Z + Z/4");
}

TEST(Io, HashHex) {
  EXPECT_EQ(hash_hex(0xabcULL), "0000000000000abc");
}

TEST(Io, DotMentionsEveryPiece) {
  const auto dot = to_dot(quasi_fixture());
  for (const auto* id : {"A", "C", "Bn", "Bp"}) EXPECT_NE(dot.find(id), std::string::npos);
}
