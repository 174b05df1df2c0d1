#include <gtest/gtest.h>

#include <random>

#include "qtanner/io.hpp"
#include "support.hpp"

using namespace qtanner;
using namespace qtanner::testing;

namespace {

std::string parse_error(const std::string& text)
{
    try {
        schreier_spec_from_json_text(text);
    } catch (const Error& e) {
        return e.what();
    }
    ADD_FAILURE() << "accepted: " << text;
    return {};
}

std::string alist_error(const std::string& text)
{
    try {
        from_alist(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::parse);
        return e.what();
    }
    ADD_FAILURE() << "accepted alist";
    return {};
}

} // namespace

TEST(SpecJson, ParsesCycleWithOneBasedPairing)
{
    const SchreierSpec s = schreier_spec_from_json_text(R"({"n": 5, "delta": 2,
        "perms": [[1, 2, 3, 4, 0], [4, 0, 1, 2, 3]], "pairing": [2, 1]})");
    EXPECT_EQ(s.n_vertices, 5U);
    EXPECT_EQ(s.pairing, (std::vector<Label>{1, 0}));
    EXPECT_FALSE(s.partition.has_value());
    EXPECT_EQ(schreier_graph(s).n_edges(), 5U);
}

TEST(SpecJson, RoundTrip)
{
    for (const SchreierSpec& s : {petersen_spec(), petersen_partner_spec(), petersen_remedy().a, cyclic_pipeline(6).b}) {
        const Json j = to_json(s);
        const SchreierSpec back = schreier_spec_from_json_text(j.dump());
        EXPECT_EQ(to_json(back), j);
        EXPECT_EQ(back.pairing, s.pairing);
        EXPECT_EQ(back.partition, s.partition);
    }
}

TEST(SpecJson, FieldErrorsNameTheField)
{
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 0]]})").find("'pairing'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 0]], "pairing": [1], "colour": 3})").find("'colour'"),
              std::string::npos);
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 1]], "pairing": [1]})").find("'perms[0]'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 2]], "pairing": [1]})").find("'perms[0][1]'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 0]], "pairing": [0]})").find("'pairing[0]'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"n": "2", "delta": 1, "perms": [[1, 0]], "pairing": [1]})").find("'n'"), std::string::npos);
    EXPECT_NE(parse_error(R"({"n": 2, "delta": 1, "perms": [[1, 0]], "pairing": [1], "partition": [0, 2]})").find("'partition[1]'"),
              std::string::npos);
}

TEST(SpecJson, MalformedAndInvalid)
{
    try {
        schreier_spec_from_json_text("{\"n\": ");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::parse);
    }
    // label 1 paired with 2 but perm 2 is not the inverse of perm 1
    try {
        schreier_spec_from_json_text(R"({"n": 3, "delta": 2, "perms": [[1, 2, 0], [1, 2, 0]], "pairing": [2, 1]})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_spec);
    }
}

TEST(LocalRows, ParseAndLengthCheck)
{
    EXPECT_EQ(parity_rows_from_json(Json::array({"110", "011"}), 3), BitMatrix::from_strings({"110", "011"}));
    EXPECT_EQ(parity_rows_from_json(Json::array(), 3).cols(), 3U);
    EXPECT_THROW(parity_rows_from_json(Json::array({"11"}), 3), Error);
    EXPECT_THROW(parity_rows_from_json(Json::array({1}), 3), Error);
}

TEST(Alist, KnownText)
{
    const BitMatrix h = BitMatrix::from_strings({"110", "011"});
    EXPECT_EQ(to_alist(h), "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
}

TEST(Alist, RoundTripRandomAndEdgeShapes)
{
    std::mt19937_64 rng(51);
    std::vector<BitMatrix> ms{BitMatrix(0, 4), BitMatrix(3, 0), BitMatrix(2, 5), BitMatrix::identity(7)};
    for (int t = 0; t < 50; ++t) ms.push_back(random_matrix(rng, 1 + t % 13, 1 + t % 17, 0.3));
    for (const BitMatrix& m : ms) {
        const std::string text = to_alist(m);
        const BitMatrix back = from_alist(text);
        EXPECT_EQ(back, m);
        EXPECT_EQ(to_alist(back), text);
    }
}

TEST(Alist, CodeMatricesRoundTrip)
{
    const ExamplePair p = cyclic_pipeline(5);
    const LinearCode rep = LinearCode::repetition(2);
    const CssCode c = css_from_complex(build_complex(p.ga, p.gb), rep, rep);
    for (const BitMatrix* h : {&c.h0, &c.h1}) EXPECT_EQ(to_alist(from_alist(to_alist(*h))), to_alist(*h));
}

TEST(Alist, MalformedInputs)
{
    alist_error("");
    alist_error("3 2\n2 2\n1 2 1\n2 2\n");
    alist_error("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n7\n");
    alist_error("3 2\n2 2\n1 2 1\n2 2\n3 0\n1 2\n2 0\n1 2\n2 3\n");
    alist_error("3 2\n2 2\n1 2 1\n2 2\n1 1\n1 2\n2 0\n1 2\n2 3\n");
    alist_error("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 3\n2 3\n");
    alist_error("3 2\n1 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n");
    alist_error("-3 2\n");
    EXPECT_NE(alist_error("3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\nx").find("trailing"), std::string::npos);
}
