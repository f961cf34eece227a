#include <random>

#include "bcm/minkowski.hpp"
#include "doctest.h"

using namespace bcm;

namespace {

std::mt19937 rng(20240817);

Point3 random_point(double range = 3.0) {
    std::uniform_real_distribution<double> d(-range, range);
    return {d(rng), d(rng), d(rng)};
}

double dist(const Point3& a, const Point3& b) {
    const double dh = a.height - b.height, du = a.u - b.u, dv = a.v - b.v;
    return std::sqrt(dh * dh + du * du + dv * dv);
}

} // namespace

TEST_CASE("inner41 basis rules") {
    CHECK(inner41(Vec41::o(), Vec41::infinity()) == -1.0);
    CHECK(inner41(Vec41::o(), Vec41::o()) == 0.0);
    CHECK(inner41(Vec41::infinity(), Vec41::infinity()) == 0.0);
    CHECK(inner41(Vec41::q(), Vec41::q()) == 1.0);
    CHECK(inner41(Vec41::e1(), Vec41::e1()) == 1.0);
    CHECK(inner41(Vec41::q(), Vec41::e1()) == 0.0);

    const Vec41 a = euclidean_lift({0, 0, 0});
    const Vec41 b = euclidean_lift({1, 0, 0});
    CHECK(inner41(a, b) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("inner42 basis rules") {
    CHECK(inner42(Vec42::p(), Vec42::p()) == -1.0);
    CHECK(inner42(Vec42::p(), Vec42{0, Vec41::q()}) == 0.0);
    CHECK(inner42(Vec42{1, Vec41::o()}, Vec42{1, Vec41::infinity()}) == -2.0);
}

TEST_CASE("euclidean_lift") {
    const Vec41 at_origin = euclidean_lift({0, 0, 0});
    CHECK(at_origin.co == 1.0);
    CHECK(at_origin.cinf == 0.0);
    CHECK(at_origin.cq == 0.0);

    const Vec41 unit_height = euclidean_lift({1, 0, 0});
    CHECK(unit_height.co == 1.0);
    CHECK(unit_height.cq == 1.0);
    CHECK(unit_height.cinf == doctest::Approx(0.5));

    for (int i = 0; i < 50; ++i) {
        const Vec41 v = euclidean_lift(random_point());
        CHECK(std::abs(inner41(v, v)) < 1e-12 * euclid_norm_sq(v));
        CHECK(inner41(v, Vec41::infinity()) == -1.0);
    }
}

TEST_CASE("lift distance identity") {
    for (int i = 0; i < 100; ++i) {
        const Point3 a = random_point(), b = random_point();
        const double d = dist(a, b);
        CHECK(inner41(euclidean_lift(a), euclidean_lift(b)) ==
              doctest::Approx(-d * d / 2).epsilon(1e-12));
    }
}

TEST_CASE("sphere_lift") {
    const Vec41 unit = sphere_lift({0, 0, 0}, 1.0);
    CHECK(unit.co == 1.0);
    CHECK(unit.cinf == doctest::Approx(-0.5));
    CHECK(inner41(unit, unit) == doctest::Approx(1.0));
    CHECK(inner41(unit, euclidean_lift({1, 0, 0})) == doctest::Approx(0.0));

    // incidence value -(|y-c|^2 - r^2)/(2r)
    const Vec41 s2 = sphere_lift({0, 0, 0}, 2.0);
    CHECK(inner41(s2, euclidean_lift({1, 0, 0})) == doctest::Approx(0.75));

    // negative radius flips orientation of the same sphere
    const Vec41 flipped = sphere_lift({0, 0, 0}, -1.0);
    CHECK(flipped.co == doctest::Approx(-unit.co));
    CHECK(flipped.cinf == doctest::Approx(-unit.cinf));

    CHECK_THROWS_AS(sphere_lift({0, 0, 0}, 0.0), Error);
    try {
        sphere_lift({1, 2, 3}, 1e-15);
        FAIL("expected ZeroRadius");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroRadius);
    }
}

TEST_CASE("sphere incidence iff distance equals radius") {
    std::uniform_real_distribution<double> rad(0.2, 2.5);
    for (int i = 0; i < 100; ++i) {
        const Point3 c = random_point();
        const double r = rad(rng);
        const Vec41 s = sphere_lift(c, r);
        const Point3 y = random_point();
        const double incidence = inner41(s, euclidean_lift(y));
        const bool on_sphere = std::abs(dist(y, c) - r) < 1e-12;
        if (std::abs(incidence) < 1e-14)
            CHECK(std::abs(dist(y, c) - r) < 1e-6);
        if (on_sphere) CHECK(std::abs(incidence) < 1e-10);
    }
}

TEST_CASE("project_null_point") {
    CHECK(project_null_point(Vec41::o() * 2.0).height == 0.0);

    const Point3 p{3, 1, 2};
    const Point3 back = project_null_point(euclidean_lift(p) * 7.0);
    CHECK(back.height == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(back.u == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(back.v == doctest::Approx(2.0).epsilon(1e-15));

    try {
        project_null_point(Vec41::infinity());
        FAIL("expected PointAtInfinity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PointAtInfinity);
    }
    try {
        project_null_point(Vec41::q() + Vec41::o());
        FAIL("expected NotNull");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotNull);
    }

    // round trip is exact to roundoff
    for (int i = 0; i < 100; ++i) {
        const Point3 y = random_point();
        const Point3 b = project_null_point(euclidean_lift(y));
        CHECK(dist(y, b) < 1e-14 * (1 + std::abs(y.height)));
    }
}

TEST_CASE("null_directions_in_plane") {
    SUBCASE("mixed plane q, o+inf") {
        const Vec41 u1 = Vec41::q();
        const Vec41 u2 = Vec41::o() + Vec41::infinity();
        auto [d1, d2] = null_directions_in_plane(u1, u2);
        // both proportional to sqrt(2) q +- (o + inf)
        for (const Vec41& d : {d1, d2}) {
            CHECK(std::abs(inner41(d, d)) < 1e-12);
            CHECK(std::abs(euclid_norm(d) - 1.0) < 1e-12);
            CHECK(std::abs(std::abs(d.cq) - std::sqrt(2.0) * std::abs(d.co)) < 1e-12);
            CHECK(d.co == doctest::Approx(d.cinf));
        }
        CHECK(std::abs(d1.cq * d2.cq) > 0);  // independent directions
    }

    SUBCASE("already null basis o, inf") {
        auto [d1, d2] = null_directions_in_plane(Vec41::o(), Vec41::infinity());
        CHECK(std::abs(inner41(d1, d1)) < 1e-14);
        CHECK(std::abs(inner41(d2, d2)) < 1e-14);
        CHECK(std::abs(inner41(d1, d2)) > 0.5);  // spans the plane
    }

    SUBCASE("definite plane fails") {
        try {
            null_directions_in_plane(Vec41::q(), Vec41::e1());
            FAIL("expected DegeneratePlane");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegeneratePlane);
        }
    }

    SUBCASE("random (1,1) planes") {
        std::uniform_real_distribution<double> d(-2, 2);
        for (int i = 0; i < 100; ++i) {
            // a null + spacelike pair always spans a signature-(1,1) plane
            const Vec41 n = euclidean_lift(random_point());
            Vec41 sp{0, d(rng), d(rng), d(rng), d(rng)};
            if (inner41(sp, sp) < 0.1) continue;
            auto [d1, d2] = null_directions_in_plane(n, sp);
            CHECK(std::abs(inner41(d1, d1)) < 1e-10);
            CHECK(std::abs(inner41(d2, d2)) < 1e-10);
            CHECK(std::abs(euclid_norm(d1) - 1) < 1e-12);
            CHECK(std::abs(euclid_norm(d2) - 1) < 1e-12);
        }
    }
}
