#include <catch2/catch_amalgamated.hpp>

#include "lvadv/field.hpp"
#include "lvadv/rational.hpp"
#include "lvadv/rng.hpp"

using namespace lvadv;

TEST_CASE("primality checks") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(401));
    CHECK(is_prime(4099));
    CHECK(is_prime((1ULL << 61) - 1));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(400));
    CHECK_FALSE(is_prime(3215031751ULL)); // strong pseudoprime to bases 2,3,5,7
    CHECK(next_prime_above(400) == 401);
    CHECK(next_prime_above(1) == 2);
    CHECK(next_prime_above(2) == 3);
}

TEST_CASE("field construction rejects composite modulus") {
    CHECK_THROWS_AS(PrimeField(15), std::invalid_argument);
    CHECK_NOTHROW(PrimeField(2));
}

TEST_CASE("modular arithmetic") {
    PrimeField f7(7);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.add(6, 1) == 0);
    PrimeField f5(5);
    CHECK(f5.sub(1, 3) == 3);
    CHECK(f5.neg(0) == 0);
    CHECK(f5.neg(2) == 3);
}

TEST_CASE("inverses") {
    PrimeField f7(7);
    CHECK(f7.inv(3) == 5);
    PrimeField f5(5);
    CHECK(f5.inv(1) == 1);
    PrimeField f11(11);
    CHECK(f11.inv(10) == 10);
    CHECK_THROWS_AS(f7.inv(0), std::domain_error);
    for (Fe a = 1; a < 11; ++a) CHECK(f11.mul(a, f11.inv(a)) == 1);
}

TEST_CASE("large modulus arithmetic") {
    PrimeField f((1ULL << 61) - 1);
    Fe a = (1ULL << 60) + 12345, b = (1ULL << 59) + 999;
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.mul(a, b) == f.mul(b, a));
    CHECK(f.pow(a, f.modulus() - 1) == 1);
}

TEST_CASE("primitive roots are the smallest generators") {
    CHECK(primitive_root(PrimeField(5)) == 2);
    CHECK(primitive_root(PrimeField(7)) == 3);
    CHECK(primitive_root(PrimeField(2)) == 1);

    // exhaustive order check at desk scale
    for (std::uint64_t q : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL}) {
        PrimeField f(q);
        Fe g = primitive_root(f);
        Fe x = 1;
        for (std::uint64_t k = 1; k < q - 1; ++k) {
            x = f.mul(x, g);
            CHECK(x != 1);
        }
        CHECK(f.mul(x, g) == 1);
        // nothing smaller generates
        for (Fe h = 1; h < g; ++h) {
            bool all = true;
            Fe y = 1;
            for (std::uint64_t k = 1; k < q - 1; ++k) {
                y = f.mul(y, h);
                if (y == 1) { all = false; break; }
            }
            CHECK_FALSE(all);
        }
    }
}

TEST_CASE("polynomial evaluation") {
    PrimeField f5(5);
    CHECK(poly_eval(f5, Poly{1, 1}, 4) == 0);
    CHECK(poly_eval(f5, Poly{}, 3) == 0);
    PrimeField f7(7);
    CHECK(poly_eval(f7, Poly{2, 3, 1}, 2) == 5);
}

TEST_CASE("polynomial convolution") {
    PrimeField f5(5);
    CHECK(poly_convolve(f5, Poly{1, 1}, Poly{1, 1}) == Poly{1, 2, 1});
    CHECK(poly_convolve(f5, Poly{}, Poly{1, 2}) == Poly{});
    CHECK(poly_convolve(f5, Poly{0, 0}, Poly{1, 2}) == Poly{});
    PrimeField f7(7);
    CHECK(poly_convolve(f7, Poly{2, 3}, Poly{1, 0, 4}) == Poly{2, 3, 1, 5});
}

TEST_CASE("convolution algebra on random inputs") {
    PrimeField f(101);
    auto rng = make_stream(42, 0);
    auto rand_poly = [&](std::size_t max_len) {
        Poly p(uniform_below(rng, max_len + 1));
        for (auto& c : p) c = f.uniform(rng);
        poly_normalize(p);
        return p;
    };
    for (int t = 0; t < 200; ++t) {
        Poly a = rand_poly(6), b = rand_poly(6), c = rand_poly(6);
        CHECK(poly_convolve(f, a, b) == poly_convolve(f, b, a));
        CHECK(poly_convolve(f, poly_convolve(f, a, b), c) == poly_convolve(f, a, poly_convolve(f, b, c)));
        CHECK(poly_convolve(f, a, poly_add(f, b, c)) ==
              poly_add(f, poly_convolve(f, a, b), poly_convolve(f, a, c)));
        Fe x = f.uniform(rng);
        CHECK(poly_eval(f, poly_convolve(f, a, b), x) == f.mul(poly_eval(f, a, x), poly_eval(f, b, x)));
    }
}

TEST_CASE("rational parsing and arithmetic") {
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("1/10") == Rational(1, 10));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
    CHECK((Rational(2, 3) * Rational(3, 4)) == Rational(1, 2));
    CHECK(Rational(1, 10).str() == "1/10");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    CHECK(Rational(1, 2) < Rational(2, 3));
}
