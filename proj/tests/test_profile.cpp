#include <gtest/gtest.h>

#include <sstream>

#include "agilepilot/errors.hpp"
#include "agilepilot/profile.hpp"
#include "test_support.hpp"

using namespace agilepilot;

namespace {

CommandProfile parse(const std::string& text, double scale = 1.0) {
    std::istringstream in(text);
    return parse_profile(in, scale, "mem");
}

ErrorKind parse_error(const std::string& text, std::string* message = nullptr) {
    try {
        parse(text);
    } catch (const FlightError& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorKind::Config;
}

}  // namespace

TEST(Profile, InterpolatesAndHoldsEnds) {
    const CommandProfile p({0.0, 1.0, 3.0}, {0.0, 10.0, 6.0});
    EXPECT_DOUBLE_EQ(p(-1.0), 0.0);
    EXPECT_DOUBLE_EQ(p(0.5), 5.0);
    EXPECT_DOUBLE_EQ(p(1.0), 10.0);
    EXPECT_DOUBLE_EQ(p(2.0), 8.0);
    EXPECT_DOUBLE_EQ(p(10.0), 6.0);
}

TEST(Profile, ParsesHeaderCommentsAndScale) {
    const CommandProfile p = parse("# comment\nt_s,alpha_deg\n\n0,0\n 1.5 , +30 \n2,-1e1\r\n", 2.0);
    ASSERT_EQ(p.times().size(), 3u);
    EXPECT_DOUBLE_EQ(p.times()[1], 1.5);
    EXPECT_DOUBLE_EQ(p.values()[1], 60.0);
    EXPECT_DOUBLE_EQ(p.values()[2], -20.0);
}

TEST(Profile, ReportsLineNumbers) {
    std::string msg;
    EXPECT_EQ(parse_error("t,a\n0,1\n1,x\n", &msg), ErrorKind::Parse);
    EXPECT_NE(msg.find("mem:3"), std::string::npos) << msg;

    EXPECT_EQ(parse_error("0,1\n1\n", &msg), ErrorKind::Parse);
    EXPECT_NE(msg.find("mem:2"), std::string::npos) << msg;
}

TEST(Profile, RejectsMalformedInput) {
    EXPECT_EQ(parse_error(""), ErrorKind::Parse);
    EXPECT_EQ(parse_error("t,a\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_error("0,1\n0,2\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_error("1,1\n0.5,2\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_error("0,1,2\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_error("0,nan\n"), ErrorKind::Parse);
    EXPECT_EQ(parse_error("t,a\nu,v\n"), ErrorKind::Parse);
}

TEST(Profile, ConstructorValidates) {
    EXPECT_THROW(CommandProfile({}, {}), FlightError);
    EXPECT_THROW(CommandProfile({0.0, 1.0}, {1.0}), FlightError);
    EXPECT_THROW(CommandProfile({1.0, 1.0}, {1.0, 2.0}), FlightError);
}

TEST(Profile, LoadsShippedAlphaProfile) {
    const auto path = agilepilot::testing::source_dir() / "data" / "alpha_0_60_0.csv";
    const CommandProfile p = load_alpha_profile(path);
    EXPECT_NEAR(p(1.0), 60.0 * agilepilot::testing::kDeg, 1e-12);
    EXPECT_NEAR(p(0.0), 0.0, 1e-12);
    EXPECT_NEAR(p(2.0), 0.0, 1e-12);
    EXPECT_THROW(load_profile("/nonexistent/profile.csv"), FlightError);
}

TEST(Profile, SimpleCases) {
    const CommandProfile two = parse("0,0\n1,10\n");
    EXPECT_DOUBLE_EQ(two(0.5), 5.0);
    EXPECT_DOUBLE_EQ(two(7.0), 10.0);
    const CommandProfile one = parse("t,alpha\n2,4\n");
    EXPECT_DOUBLE_EQ(one(0.0), 4.0);
    EXPECT_DOUBLE_EQ(one(2.0), 4.0);
    EXPECT_DOUBLE_EQ(one(9.0), 4.0);
}
