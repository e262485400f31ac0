#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "w123/errors.hpp"
#include "w123/profile.hpp"

using namespace w123;

TEST_CASE("built-in profiles validate") {
    CHECK_NOTHROW(ProfileConstants::desk().validate());
    CHECK_NOTHROW(ProfileConstants::paper().validate());
    CHECK(ProfileConstants::desk().name == "desk");
    const ProfileConstants paper = ProfileConstants::paper();
    CHECK(paper.name == "paper");
    CHECK(paper.p_U == 1e-4);
    CHECK(paper.eps_U == 1e-6);
    CHECK(paper.m_levels == 1000);
    CHECK(paper.eps_FU == 1e-5);
    CHECK(paper.frac_NU == 2e-3);
    CHECK(paper.frac_I == 0.95);
    CHECK(paper.modulus_M == 100);
    CHECK(paper.min_delta_ratio == 1e20);
}

TEST_CASE("validation rejects broken constants") {
    auto broken = [](auto mutate) {
        ProfileConstants p;
        mutate(p);
        return p;
    };
    CHECK_THROWS_AS(broken([](auto& p) { p.p_U = 0.0; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.p_FW = 1.0; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.eps_U = p.p_U; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.eps_loc = 0.0; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.m_levels = 1; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.modulus_M = 3; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.reserved_residues = {0, 10}; }).validate(), InvalidArgument);
    CHECK_THROWS_AS(broken([](auto& p) { p.reserved_residues.clear(); }).validate(), InvalidArgument);
}

TEST_CASE("reserved residues") {
    const ProfileConstants p;
    CHECK(p.is_reserved(0));
    CHECK(p.is_reserved(21));
    CHECK(p.is_reserved(-10));
    CHECK(p.is_reserved(-9));
    CHECK_FALSE(p.is_reserved(-1));
    CHECK_FALSE(p.is_reserved(12));
    CHECK(p.fu_fraction_w() == doctest::Approx((1.0 - 1.0 / p.m_levels) / 2));
}

TEST_CASE("JSON round trip and overrides") {
    const ProfileConstants paper = ProfileConstants::paper();
    nlohmann::json j = paper;
    CHECK(j.get<ProfileConstants>() == paper);

    ProfileConstants p;
    from_json(nlohmann::json{{"eps_loc", 0.3}, {"modulus_M", 20}}, p);
    CHECK(p.eps_loc == 0.3);
    CHECK(p.modulus_M == 20);
    CHECK(p.p_U == ProfileConstants{}.p_U);

    ProfileConstants q;
    from_json(nlohmann::json{{"base", "paper"}, {"frac_I", 0.9}}, q);
    CHECK(q.p_U == paper.p_U);
    CHECK(q.frac_I == 0.9);

    CHECK_THROWS_AS(from_json(nlohmann::json{{"bogus", 1}}, p), InvalidArgument);
    CHECK_THROWS_AS(from_json(nlohmann::json{{"base", "huge"}}, p), InvalidArgument);
    CHECK_THROWS_AS(from_json(nlohmann::json::array(), p), InvalidArgument);
}

TEST_CASE("profile files") {
    const std::string path = "w123_profile_test.json";
    {
        std::ofstream os(path);
        os << R"({"eps_len": 0.25, "name": "wide"})";
    }
    const ProfileConstants p = load_profile_file(path);
    CHECK(p.eps_len == 0.25);
    CHECK(p.name == "wide");
    {
        std::ofstream os(path);
        os << R"({"p_U": 2.0})";
    }
    CHECK_THROWS_AS(load_profile_file(path), InvalidArgument);
    {
        std::ofstream os(path);
        os << "{not json";
    }
    CHECK_THROWS_AS(load_profile_file(path), InvalidArgument);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_profile_file("/nonexistent/profile.json"), InvalidArgument);
}

TEST_CASE("budgets") {
    const Budgets b;
    CHECK(b.local_limit(100) == 564);
    const nlohmann::json j = b;
    CHECK(j.at("pipeline_restarts") == 1);
}
