#include <catch2/catch_amalgamated.hpp>

#include "charclass/groups.hpp"

using namespace charclass;

TEST_CASE("rho per family") {
    // gl, r = 2: (2, 1, 0)
    const auto gl = rho(make_group(Family::GL, 2));
    REQUIRE(gl.entries.size() == 3);
    CHECK(gl.entries[0] == HalfInteger::whole(2));
    CHECK(gl.entries[1] == HalfInteger::whole(1));
    CHECK(gl.entries[2] == HalfInteger::whole(0));

    // so-odd, r = 2: (3/2, 1/2)
    const auto so = rho(make_group(Family::SOOdd, 2));
    REQUIRE(so.entries.size() == 2);
    CHECK(so.entries[0].twice == 3);
    CHECK(so.entries[1].twice == 1);

    // sp, r = 3: (3, 2, 1)
    const auto sp = rho(make_group(Family::Sp, 3));
    REQUIRE(sp.entries.size() == 3);
    CHECK(sp.entries[0] == HalfInteger::whole(3));
    CHECK(sp.entries[2] == HalfInteger::whole(1));

    // gl with shift
    const auto gls = rho(make_group(Family::GL, 2), 2);
    CHECK(gls.entries[2] == HalfInteger::whole(2));
    CHECK_THROWS_AS(rho(make_group(Family::GL, 2), -1), std::invalid_argument);
}

TEST_CASE("exponents = lambda + rho") {
    const auto gl = make_group(Family::GL, 2);
    const auto e1 = exponents(DominantWeight(gl, {2, 1, 0}));
    CHECK(e1.entries[0] == HalfInteger::whole(4));
    CHECK(e1.entries[1] == HalfInteger::whole(2));
    CHECK(e1.entries[2] == HalfInteger::whole(0));

    const auto so = make_group(Family::SOOdd, 2);
    const auto e2 = exponents(DominantWeight(so, {1, 0}));
    CHECK(e2.entries[0].twice == 5); // 5/2
    CHECK(e2.entries[1].twice == 1); // 1/2

    const auto d = make_group(Family::SOEven, 2);
    const auto e3 = exponents(DominantWeight(d, {1, -1}));
    CHECK(e3.entries[0] == HalfInteger::whole(2));
    CHECK(e3.entries[1] == HalfInteger::whole(-1));
}

TEST_CASE("exponents minus rho recovers the weight exactly") {
    for (Family f : {Family::GL, Family::SL, Family::SOOdd, Family::Sp, Family::SOEven}) {
        const auto g = make_group(f, 3);
        std::vector<int> lam = (f == Family::GL || f == Family::SL)
                                   ? std::vector<int>{5, 3, 1, 0}
                                   : std::vector<int>{4, 2, 1};
        const DominantWeight w(g, lam);
        const auto ex = exponents(w);
        const auto rh = rho(g);
        for (std::size_t i = 0; i < w.entries().size(); ++i)
            CHECK(ex.entries[i].twice - rh.entries[i].twice == 2 * w.entries()[i]);
    }
}

TEST_CASE("dominance validation") {
    const auto gl = make_group(Family::GL, 2);
    CHECK_THROWS_AS(DominantWeight(gl, {0, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(DominantWeight(gl, {1, 0}), DimensionMismatch);
    CHECK_NOTHROW(DominantWeight(gl, {3, 0, -2})); // negative entries fine for gl

    const auto sp = make_group(Family::Sp, 2);
    CHECK_THROWS_AS(DominantWeight(sp, {1, -1}), std::invalid_argument);

    const auto d = make_group(Family::SOEven, 3);
    CHECK_NOTHROW(DominantWeight(d, {3, 2, -2}));
    CHECK_THROWS_AS(DominantWeight(d, {3, 2, -3}), std::invalid_argument);
    CHECK_NOTHROW(DominantWeight(make_group(Family::SOEven, 1), {-4})); // r = 1: unconstrained
}

TEST_CASE("sl weights canonicalize to last entry zero") {
    const auto sl = make_group(Family::SL, 2);
    const DominantWeight base(sl, {2, 1, 0});
    for (int m : {-2, -1, 0, 1, 2}) {
        const DominantWeight shifted(sl, {2 + m, 1 + m, m});
        CHECK(shifted == base);
        CHECK(shifted.entries().back() == 0);
    }
}

TEST_CASE("bar is the last-entry sign flip and an involution") {
    const auto d2 = make_group(Family::SOEven, 2);
    CHECK(bar(DominantWeight(d2, {1, 1})).entries() == std::vector<int>{1, -1});
    CHECK(bar(DominantWeight(d2, {1, 0})).entries() == std::vector<int>{1, 0});
    const auto d3 = make_group(Family::SOEven, 3);
    CHECK(bar(DominantWeight(d3, {3, 2, -2})).entries() == std::vector<int>{3, 2, 2});

    const DominantWeight w(d3, {4, 1, -1});
    CHECK(bar(bar(w)) == w);
    CHECK((bar(w) == w) == false);
    CHECK(bar(DominantWeight(d3, {4, 1, 0})) == DominantWeight(d3, {4, 1, 0}));

    CHECK_THROWS_AS(bar(DominantWeight(make_group(Family::Sp, 2), {1, 0})), WrongFamily);
}

TEST_CASE("is_member on torus elements") {
    ComplexMatrix t2 = ComplexMatrix::Zero(2, 2);
    t2(0, 0) = 2.0;
    t2(1, 1) = 0.5;
    CHECK(is_member(t2, make_group(Family::Sp, 1), 1e-10));
    CHECK(is_member(t2, make_group(Family::SL, 1), 1e-10));
    CHECK(is_member(t2, make_group(Family::SOEven, 1), 1e-10));

    ComplexMatrix d23 = ComplexMatrix::Zero(2, 2);
    d23(0, 0) = 2.0;
    d23(1, 1) = 3.0;
    CHECK(!is_member(d23, make_group(Family::SL, 1), 1e-10));
    CHECK(is_member(d23, make_group(Family::GL, 1), 1e-10));

    ComplexMatrix t3 = ComplexMatrix::Zero(3, 3);
    t3(0, 0) = 4.0;
    t3(1, 1) = 0.25;
    t3(2, 2) = 1.0;
    CHECK(is_member(t3, make_group(Family::SOOdd, 1), 1e-10));

    CHECK_THROWS_AS(is_member(t2, make_group(Family::SOOdd, 1), 1e-10), DimensionMismatch);
}

TEST_CASE("sample lands in the group") {
    for (Family f : {Family::GL, Family::SL, Family::SOOdd, Family::Sp, Family::SOEven}) {
        for (int rank = 1; rank <= 3; ++rank) {
            const auto g = make_group(f, rank);
            for (std::uint64_t seed : {1ull, 7ull, 42ull}) {
                const ComplexMatrix m = sample(g, seed, 0.8);
                CHECK(is_member(m, g, 1e-8));
            }
        }
    }
}

TEST_CASE("from_orthonormal converts the standard convention") {
    // a plane rotation is special orthogonal in the g^T g = 1 convention
    const double th = 0.73;
    ComplexMatrix rot = ComplexMatrix::Zero(3, 3);
    rot(0, 0) = std::cos(th);
    rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th);
    rot(1, 1) = std::cos(th);
    rot(2, 2) = 1.0;
    const auto so1 = make_group(Family::SOOdd, 1);
    CHECK(!is_member(rot, so1, 1e-8)); // wrong basis as given
    const ComplexMatrix split = from_orthonormal(rot, so1);
    CHECK(is_member(split, so1, 1e-8));
    // eigenvalues e^{+-i th} pair up on the split torus
    const auto ev = eigenvalues(split).values;
    bool found = false;
    for (int i = 0; i < 3; ++i)
        if (std::abs(ev[i] - std::exp(Complex(0.0, th))) < 1e-10) found = true;
    CHECK(found);

    CHECK_THROWS_AS(from_orthonormal(rot, make_group(Family::Sp, 1)), DimensionMismatch);
    ComplexMatrix rot2 = rot.topLeftCorner(2, 2);
    CHECK_THROWS_AS(from_orthonormal(rot2, make_group(Family::Sp, 1)), WrongFamily);
}

TEST_CASE("sample edge cases and determinism") {
    const auto sp2 = make_group(Family::Sp, 2);
    CHECK((sample(sp2, 5, 0.0) - ComplexMatrix::Identity(4, 4)).norm() < 1e-8);
    CHECK((sample(sp2, 5, 1e-9) - ComplexMatrix::Identity(4, 4)).norm() < 1e-8);

    const ComplexMatrix a = sample(sp2, 11, 0.5), b = sample(sp2, 11, 0.5);
    CHECK((a - b).norm() == 0.0);

    const auto sl1 = make_group(Family::SL, 1);
    CHECK(std::abs(sample(sl1, 3, 0.7).determinant() - Complex(1.0)) < 1e-8);

    const ComplexMatrix msp = sample(sp2, 9, 0.6);
    CHECK((msp.transpose() * sp2.form * msp - sp2.form).norm() < 1e-8 * sp2.form.norm());

    CHECK_THROWS_AS(sample(sp2, 1, -0.5), std::invalid_argument);
}
