#include <catch2/catch_amalgamated.hpp>

#include "lvadv/lv.hpp"
#include "lvadv/rng.hpp"

using namespace lvadv;

namespace {

// N=4, u1=50, v=2, R=1/10: q=401, k=80, 40 message symbols.
LvParams worked() { return derive_params(4, 50, 2, Rational{1, 10}); }

// Smallest feasible instance: N=2, u1=5, v=1, R=1/34, q forced down to 11.
LvParams minimal() { return derive_params(2, 5, 1, Rational{1, 34}, 11); }

Message random_message(const LvParams& p, std::mt19937_64& rng) {
    Message m(p.msg_len);
    for (auto& s : m) s = p.field.uniform(rng);
    return m;
}

} // namespace

TEST_CASE("derived parameters of the worked instance") {
    LvParams p = worked();
    CHECK(p.d == 10);
    CHECK(p.u2 == 50);
    CHECK(p.u == 100);
    CHECK(p.l == 10);
    CHECK(p.msg_len == 40);
    CHECK(p.dim == 80);
    CHECK(p.field.modulus() == 401);
    CHECK(p.gamma == 3);
    CHECK(adversary_budget(p) == 1);
}

TEST_CASE("derived parameters of the minimal instance") {
    LvParams p = minimal();
    CHECK(p.d == 4);
    CHECK(p.u2 == 12);
    CHECK(p.u == 17);
    CHECK(p.l == 1);
    CHECK(p.msg_len == 1);
    CHECK(p.dim == 10);
    CHECK(p.field.modulus() == 11);
    CHECK(adversary_budget(p) == 0);
}

TEST_CASE("infeasible parameter sets are rejected") {
    CHECK_THROWS_AS(derive_params(1, 50, 2, Rational{1, 10}), InfeasibleParamsError);
    CHECK_THROWS_AS(derive_params(4, 50, 0, Rational{1, 10}), InfeasibleParamsError);
    CHECK_THROWS_AS(derive_params(4, 50, 51, Rational{1, 10}), InfeasibleParamsError);
    CHECK_THROWS_AS(derive_params(4, 50, 2, Rational{0, 1}), InfeasibleParamsError);
    CHECK_THROWS_AS(derive_params(4, 50, 2, Rational{1, 1}), InfeasibleParamsError);
    // k = N*l + N(3N-2) outgrows u1*N
    CHECK_THROWS_AS(derive_params(4, 20, 2, Rational{1, 10}), InfeasibleParamsError);
    // rate with a message length that is not an integer
    CHECK_THROWS_AS(derive_params(4, 50, 2, Rational{1, 3}), InfeasibleParamsError);
    try {
        derive_params(4, 50, 2, Rational{1, 3});
        FAIL("expected InfeasibleParamsError");
    } catch (const InfeasibleParamsError& e) {
        CHECK(std::string(e.what()).find("nearest feasible rate") != std::string::npos);
    }
    // q override must be prime and exceed u1*N
    CHECK_THROWS_AS(derive_params(4, 50, 2, Rational{1, 10}, 201), InfeasibleParamsError);
    CHECK_THROWS_AS(derive_params(4, 50, 2, Rational{1, 10}, 199), InfeasibleParamsError);
    CHECK_NOTHROW(derive_params(4, 50, 2, Rational{1, 10}, 211));
}

TEST_CASE("nearest feasible rate suggestion") {
    CHECK(nearest_feasible_rate(4, 100, Rational{1, 3}) == Rational{133, 400});
    CHECK(nearest_feasible_rate(4, 100, Rational{1, 10}) == Rational{1, 10});
}

TEST_CASE("epsilon preset") {
    EpsilonPreset pre = epsilon_preset(Rational{1, 2}, 4);
    CHECK(pre.v == 2);
    CHECK(pre.u == 64);
    EpsilonPreset pre3 = epsilon_preset(Rational{1, 3}, 2);
    CHECK(pre3.v == 3);
    CHECK(pre3.u == 2 * 81 + 2 * 2 * 9);
    CHECK_THROWS_AS(epsilon_preset(Rational{0, 1}, 4), InfeasibleParamsError);

    auto u1 = resolve_folding_for_width(4, 64);
    REQUIRE(u1.has_value());
    CHECK(*u1 + 4 * key_block_count_for_folding(*u1) + 10 <= 64);
    CHECK_FALSE(resolve_folding_for_width(4, 11).has_value()); // u too small for any folding
}

TEST_CASE("decoding-radius bound") {
    LvParams p = worked();
    RhoBound b = rho_bound(p);
    CHECK(b.half_term == Catch::Approx(0.375));
    // v/(v+1) - v/(v+1) * 22 / (16 + 100 - 4*(sqrt(216)+3) - 2)
    double den = 116.0 - 4.0 * (std::sqrt(216.0) + 3.0) - 2.0;
    double expect = (2.0 / 3.0) * (1.0 - 22.0 / den);
    CHECK(b.frs_term == Catch::Approx(expect).epsilon(1e-9));
    CHECK(b.value == Catch::Approx(std::min(0.375, expect)));
    CHECK(p.rho == Catch::Approx(b.value));

    // pre-simplification form: 2/3 - (2/3)*(10+12-1)/49 = 8/21
    CHECK(b.proof_form == Rational{8, 21});
    // the published simplification is the conservative side of the proof form
    CHECK(b.frs_term <= b.proof_form.value());

    // N=2 pins the first term at 1/4
    RhoBound b2 = rho_bound(minimal());
    CHECK(b2.half_term == Catch::Approx(0.25));
    CHECK(b2.value <= 0.25);
}

TEST_CASE("adversary budget matches an independent floor computation") {
    for (auto [N, u1, v, rate] : {std::tuple<std::size_t, std::size_t, std::size_t, Rational>
                                      {4, 50, 2, Rational{1, 10}},
                                  {8, 50, 2, Rational{61, 1216}},
                                  {6, 80, 3, Rational{26, 261}},
                                  {16, 100, 2, Rational{309, 6176}}}) {
        LvParams p = derive_params(N, u1, v, rate);
        RhoBound b = rho_bound(p);
        const double scaled = static_cast<double>(N) * b.value;
        const long long expect = scaled < 0 ? -1 : static_cast<long long>(std::floor(scaled + 1e-9));
        const std::size_t budget = adversary_budget(p);
        CHECK(static_cast<long long>(budget) == std::max(0LL, expect));
    }
}

TEST_CASE("failure-probability bound") {
    CHECK(delta_bound_for(4, 11, 2) == Catch::Approx(8.0 / 1331.0).epsilon(1e-15));
    LvParams p = worked();
    CHECK(delta_bound(p) == Catch::Approx(8.0 / (401.0 * 401.0 * 401.0)).epsilon(1e-12));
    CHECK(delta_bound(p) < 1e-5);
    // monotone decay in N at the derived prime sizes
    double d4 = delta_bound(derive_params(4, 50, 2, Rational{1, 10}));
    double d8 = delta_bound(derive_params(8, 50, 2, Rational{19, 304}));
    CHECK(d8 < d4);
    // exponent never helps when v = N: bound is 2N/q
    CHECK(delta_bound_for(3, 101, 3) == Catch::Approx(6.0 / 101.0));
}

TEST_CASE("encoding structure") {
    LvParams p = worked();
    auto rng = make_stream(1, 0);
    Message msg = random_message(p, rng);
    LvCodeword c = lv_encode(p, msg, rng);
    REQUIRE(c.size() == p.block_len);
    for (const auto& comp : c) CHECK(comp.size() == p.u);

    auto rng_a = make_stream(77, 0), rng_b = make_stream(77, 0);
    CHECK(lv_encode(p, msg, rng_a) == lv_encode(p, msg, rng_b));

    CHECK_THROWS_AS(lv_encode(p, Message(p.msg_len - 1, 0), rng), std::invalid_argument);
    CHECK_THROWS_AS(lv_encode(p, Message(p.msg_len, 401), rng), std::invalid_argument);
}

TEST_CASE("zero message with zero-forced keys gives the all-zero codeword") {
    LvParams p = minimal();
    MacParams mp = p.mac();
    MacKey zero_key{std::vector<Poly>(mp.d, Poly(mp.block, 0)), Poly(mp.tag_len(), 0)};
    LvCodeword c = lv_encode_with_keys(p, Message(p.msg_len, 0),
                                       std::vector<MacKey>(p.block_len, zero_key));
    for (const auto& comp : c)
        for (Fe s : comp) CHECK(s == 0);
}

TEST_CASE("clean round trip at the minimal instance") {
    LvParams p = minimal();
    for (std::uint64_t t = 0; t < 200; ++t) {
        auto rng = make_stream(100, t);
        Message msg = random_message(p, rng);
        DecodeOutcome out = lv_decode(p, lv_encode(p, msg, rng));
        REQUIRE(out.has_value());
        CHECK(*out == msg);
    }
}

TEST_CASE("clean round trip at the worked instance") {
    LvParams p = worked();
    for (std::uint64_t t = 0; t < 10; ++t) {
        auto rng = make_stream(200, t);
        Message msg = random_message(p, rng);
        DecodeOutcome out = lv_decode(p, lv_encode(p, msg, rng));
        REQUIRE(out.has_value());
        CHECK(*out == msg);
    }
}

TEST_CASE("round trip survives errors within the component budget") {
    LvParams p = worked();
    REQUIRE(adversary_budget(p) == 1);
    for (std::uint64_t t = 0; t < 10; ++t) {
        auto rng = make_stream(300, t);
        Message msg = random_message(p, rng);
        LvCodeword c = lv_encode(p, msg, rng);
        std::size_t pos = uniform_below(rng, p.block_len);
        for (auto& s : c[pos]) s = p.field.uniform(rng);
        DecodeOutcome out = lv_decode(p, c);
        REQUIRE(out.has_value());
        CHECK(*out == msg);
    }
}

TEST_CASE("malformed received words are rejected") {
    LvParams p = minimal();
    auto rng = make_stream(400, 0);
    LvCodeword c = lv_encode(p, random_message(p, rng), rng);
    LvCodeword fewer(c.begin(), c.end() - 1);
    CHECK_THROWS_AS(lv_decode(p, fewer), MalformedInputError);
    LvCodeword narrow = c;
    narrow[0].pop_back();
    CHECK_THROWS_AS(lv_decode(p, narrow), MalformedInputError);
    LvCodeword alien = c;
    alien[1][0] = p.field.modulus();
    CHECK_THROWS_AS(lv_decode(p, alien), MalformedInputError);
}

TEST_CASE("nonzero padding in the source state is never released") {
    // forge a word whose padded region of x is nonzero; every verification
    // block accepts it, so only the padding rule stands between it and output
    LvParams p = minimal();
    REQUIRE(p.block_len * p.l > p.msg_len);
    auto rng = make_stream(500, 0);
    MacParams mp = p.mac();
    std::vector<Fe> x(p.block_len * p.l, 0);
    for (auto& s : x) s = p.field.uniform(rng);
    x[p.msg_len] = 5; // nonzero pad symbol

    std::vector<MacKey> keys;
    std::vector<Fe> frs_msg(x);
    for (std::size_t i = 0; i < p.block_len; ++i) {
        keys.push_back(random_key(mp, rng));
        Tag t = mac_tag_matrix(mp, x, keys.back());
        frs_msg.insert(frs_msg.end(), t.begin(), t.end());
    }
    FrsCodeword cf = frs_encode(p.frs(), frs_msg);
    LvCodeword c(p.block_len);
    for (std::size_t i = 0; i < p.block_len; ++i) {
        c[i] = cf[i];
        auto ks = key_to_symbols(keys[i]);
        c[i].insert(c[i].end(), ks.begin(), ks.end());
    }
    CHECK_FALSE(lv_decode(p, c).has_value());
}

TEST_CASE("honest verification blocks fail no more often than the bound") {
    // minimal scale, no corruption: every component is honest, so the failure
    // rate of the per-component unique-solution step must stay within
    // 2/q^(N-v+1) = 2/121
    LvParams p = minimal();
    const double bound = 2.0 / 121.0;
    std::uint64_t failures = 0;
    const std::uint64_t trials = 500;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = make_stream(600, t);
        Message msg = random_message(p, rng);
        DecodeOutcome out = lv_decode(p, lv_encode(p, msg, rng));
        if (!out || *out != msg) ++failures;
    }
    CHECK(static_cast<double>(failures) / static_cast<double>(trials) <= bound);
    CHECK(failures == 0);
}
