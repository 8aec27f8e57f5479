#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "snrshrink/data_ingest.hpp"
#include "snrshrink/error.hpp"

using namespace snrshrink;

namespace {

IngestResult parse_text(const std::string& text, Schema schema) {
    std::istringstream in(text);
    return parse_corpus(in, schema, "test");
}

}  // namespace

TEST(Estimate, Invariants) {
    const auto e = Estimate::from_b_s(3.0, 1.5);
    EXPECT_EQ(e.z(), 2.0);
    EXPECT_TRUE(e.has_b_and_s());
    EXPECT_FALSE(e.magnitude_only());
    EXPECT_THROW(Estimate::from_b_s(1.0, 0.0), InputError);
    EXPECT_THROW(Estimate::from_b_s(1.0, -1.0), InputError);
    EXPECT_THROW(Estimate::from_b_s(INFINITY, 1.0), InputError);
    EXPECT_THROW(Estimate::from_b_s(1.0, INFINITY), InputError);

    const auto m = Estimate::from_abs_z(2.5);
    EXPECT_TRUE(m.magnitude_only());
    EXPECT_EQ(m.b(), 2.5);
    EXPECT_EQ(m.s(), 1.0);
    EXPECT_THROW(Estimate::from_abs_z(-1.0), InputError);
}

TEST(Corpus, MagnitudeOnlyIsConjunction) {
    EXPECT_TRUE(Corpus({Estimate::from_abs_z(1.0), Estimate::from_abs_z(2.0)}, "a").magnitude_only());
    EXPECT_FALSE(Corpus({Estimate::from_abs_z(1.0), Estimate::from_z(-2.0)}, "a").magnitude_only());
    EXPECT_THROW(Corpus({}, "empty"), InputError);
}

TEST(ParseCorpus, BsRowWithZeroSeIsExcludedWithWarning) {
    const auto r = parse_text("b,s\n1.0,0.5\n2.0,0\n-0.3,0.1\n", Schema::b_s);
    ASSERT_EQ(r.corpus.size(), 2u);
    ASSERT_EQ(r.issues.size(), 1u);
    EXPECT_EQ(r.issues[0].line, 3u);
    EXPECT_TRUE(r.issues[0].excluded);
    EXPECT_EQ(r.corpus.records()[1].b(), -0.3);
}

TEST(ParseCorpus, PValuesBecomeMagnitudes) {
    const auto r = parse_text("p\n0.05\n1.0\n", Schema::p_value);
    ASSERT_EQ(r.corpus.size(), 2u);
    EXPECT_NEAR(r.corpus.records()[0].z(), 1.959964, 1e-6);
    EXPECT_EQ(r.corpus.records()[1].z(), 0.0);
    EXPECT_TRUE(r.corpus.magnitude_only());
}

TEST(ParseCorpus, EightySixZValues) {
    std::string text = "# signed z-values\nstudy,z\n";
    for (int i = 0; i < 86; ++i) text += "s" + std::to_string(i) + "," + std::to_string((i % 7) - 3.25) + "\n";
    const auto r = parse_text(text, Schema::z_value);
    EXPECT_EQ(r.corpus.size(), 86u);
    EXPECT_FALSE(r.corpus.magnitude_only());
    EXPECT_TRUE(r.issues.empty());
}

TEST(ParseCorpus, ZTimesSEqualsB) {
    const auto r = parse_text("b,s\n0.123456789,0.0371\n-45.6,12.3\n1e-5,3e-7\n", Schema::b_s);
    for (const auto& e : r.corpus.records()) EXPECT_NEAR(e.z() * e.s(), e.b(), 1e-12 * std::abs(e.b()));
}

TEST(ParseCorpus, CommentsBlankLinesQuotesBomAndExtraColumns) {
    const auto r = parse_text("\xEF\xBB\xBF# header comment\n\n\"id\",\"b\",\"s\"\n\"x\",+1.5e0,2\n  # inline\ny,-2.5,0.5\r\n",
                              Schema::b_s);
    ASSERT_EQ(r.corpus.size(), 2u);
    EXPECT_EQ(r.corpus.records()[0].z(), 0.75);
    EXPECT_EQ(r.corpus.records()[1].z(), -5.0);
}

TEST(ParseCorpus, Errors) {
    EXPECT_THROW(parse_text("", Schema::z_value), InputError);
    EXPECT_THROW(parse_text("q\n1\n", Schema::p_value), InputError);        // missing column
    EXPECT_THROW(parse_text("b\n1\n", Schema::b_s), InputError);            // missing s
    EXPECT_THROW(parse_text("z\n", Schema::z_value), InputError);           // empty result
    EXPECT_THROW(parse_text("p\n0\n", Schema::p_value), InputError);        // every row fails
    EXPECT_THROW(parse_schema("t_value"), InputError);
    EXPECT_THROW(parse_corpus(std::string("/nonexistent/corpus.csv"), Schema::z_value), InputError);
}

TEST(ParseCorpus, RejectsP0AndCommaDecimals) {
    std::string text = "p\n";
    for (int i = 0; i < 30; ++i) text += "0.5\n";
    text += "0\n";
    text += "\"0,5\"\n";
    text += "p<0.001\n";
    const auto r = parse_text(text, Schema::p_value);
    EXPECT_EQ(r.corpus.size(), 30u);
    EXPECT_EQ(r.issues.size(), 3u);
}

TEST(ParseCorpus, TooManyFailuresRejectsFile) {
    std::string text = "z\n";
    for (int i = 0; i < 18; ++i) text += "1.0\n";
    text += "abc\nxyz\nNaNish\n";
    try {
        parse_text(text, Schema::z_value);
        FAIL() << "expected rejection";
    } catch (const InputError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("line 20"), std::string::npos);
        EXPECT_NE(msg.find("line 22"), std::string::npos);
    }
    // exactly 10% failing is accepted
    std::string ok = "z\n";
    for (int i = 0; i < 18; ++i) ok += "1.0\n";
    ok += "abc\nxyz\n";
    EXPECT_EQ(parse_text(ok, Schema::z_value).corpus.size(), 18u);
}

TEST(ParseCorpus, TinyPClampedWithWarningButKept) {
    const auto r = parse_text("p\n1e-320\n0.5\n", Schema::p_value);
    ASSERT_EQ(r.corpus.size(), 2u);
    EXPECT_EQ(r.corpus.records()[0].z(), 40.0);
    ASSERT_EQ(r.issues.size(), 1u);
    EXPECT_FALSE(r.issues[0].excluded);
}

TEST(ParseCorpus, DeterministicFromFile) {
    const auto path = std::filesystem::temp_directory_path() / "snrshrink_ingest_det.csv";
    {
        std::ofstream out(path);
        out << "b,s\n0.1,0.3\n-1.7,0.9\n2.2,1.1\n";
    }
    const auto a = parse_corpus(path.string(), Schema::b_s);
    const auto b = parse_corpus(path.string(), Schema::b_s);
    EXPECT_EQ(a.corpus.records(), b.corpus.records());
    EXPECT_EQ(a.corpus.source_label(), path.string());
    std::filesystem::remove(path);
}
