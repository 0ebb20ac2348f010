#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lvadv/io.hpp"
#include "lvadv/rng.hpp"

using namespace lvadv;

namespace {

LvParams minimal() { return derive_params(2, 5, 1, Rational{1, 34}, 11); }

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("lvadv_io_" + std::to_string(std::random_device{}()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("message file round trip is byte exact") {
    TempDir dir;
    LvParams p = minimal();
    Message msg{7};
    write_message_file(dir.file("m.txt"), msg);
    CHECK(read_message_file(dir.file("m.txt"), p) == msg);

    std::ifstream is(dir.file("m.txt"), std::ios::binary);
    std::stringstream raw;
    raw << is.rdbuf();
    CHECK(raw.str() == "7\n");
}

TEST_CASE("message file validation") {
    TempDir dir;
    LvParams p = minimal();
    {
        std::ofstream os(dir.file("short.txt"));
        os << "";
    }
    CHECK_THROWS_AS(read_message_file(dir.file("short.txt"), p), MalformedInputError);
    {
        std::ofstream os(dir.file("long.txt"));
        os << "1 2\n";
    }
    CHECK_THROWS_AS(read_message_file(dir.file("long.txt"), p), MalformedInputError);
    {
        std::ofstream os(dir.file("alien.txt"));
        os << "11\n"; // == q
    }
    CHECK_THROWS_AS(read_message_file(dir.file("alien.txt"), p), MalformedInputError);
    CHECK_THROWS_AS(read_message_file(dir.file("absent.txt"), p), MalformedInputError);
}

TEST_CASE("codeword file round trip") {
    TempDir dir;
    LvParams p = minimal();
    auto rng = make_stream(1, 0);
    Message msg{9};
    LvCodeword c = lv_encode(p, msg, rng);
    write_codeword_file(dir.file("c.txt"), p, c);
    CodewordFile cf = read_codeword_file(dir.file("c.txt"));
    CHECK(cf.codeword == c);
    CHECK(cf.params.field.modulus() == p.field.modulus());
    CHECK(cf.params.rate == p.rate);
    CHECK(cf.params.u == p.u);
    DecodeOutcome out = lv_decode(cf.params, cf.codeword);
    REQUIRE(out.has_value());
    CHECK(*out == msg);
}

TEST_CASE("codeword file header is cross-checked") {
    TempDir dir;
    LvParams p = minimal();
    auto rng = make_stream(2, 0);
    LvCodeword c = lv_encode(p, Message{3}, rng);
    write_codeword_file(dir.file("c.txt"), p, c);

    // corrupt the u2 field of the header
    std::ifstream is(dir.file("c.txt"));
    std::string header, rest, line;
    std::getline(is, header);
    std::stringstream body;
    while (std::getline(is, line)) body << line << '\n';
    is.close();
    {
        std::ofstream os(dir.file("bad.txt"));
        os << "2 5 13 11 1 1 4 1/34\n" << body.str(); // u2 should be 12
    }
    CHECK_THROWS_AS(read_codeword_file(dir.file("bad.txt")), MalformedInputError);

    {
        std::ofstream os(dir.file("trunc.txt"));
        os << header << '\n';
    }
    CHECK_THROWS_AS(read_codeword_file(dir.file("trunc.txt")), MalformedInputError);
}

TEST_CASE("frs codeword serialization") {
    FrsParams p = make_frs_params(PrimeField(7), 2, 3, 2, 2);
    FrsCodeword c = frs_encode(p, {4, 6});
    std::stringstream ss;
    write_frs_codeword(ss, c);
    CHECK(read_frs_codeword(ss, p) == c);
}

TEST_CASE("mac key and tag serialization") {
    MacParams p = make_mac_params(PrimeField(7), 2, 3, 2);
    auto rng = make_stream(3, 0);
    MacKey k = random_key(p, rng);
    std::stringstream ss;
    write_mac_key(ss, p, k);
    MacKey back = read_mac_key(ss, p);
    CHECK(back.r == k.r);
    CHECK(back.r_final == k.r_final);

    std::stringstream wrong("2 3 2 11\n");
    CHECK_THROWS_AS(read_mac_key(wrong, p), MalformedInputError);

    std::stringstream tag_out;
    SourceState x(p.source_len(), 1);
    write_mac_tag(tag_out, p, mac_tag_matrix(p, x, k));
    std::size_t N, l, d;
    std::uint64_t q;
    tag_out >> N >> l >> d >> q;
    CHECK(N == 2);
    CHECK(q == 7);
}

TEST_CASE("simulation report rendering") {
    SimReport r;
    r.trials = 10;
    r.bottom_count = 1;
    r.wrong_message_count = 0;
    r.delta_empirical = 0.1;
    r.delta_bound = 0.25;
    r.out_of_model = true;
    r.seed = 99;
    r.by_strategy.push_back({"substitution", 10, 1, 0});
    r.note = "x";
    std::string text = sim_report_text(r);
    CHECK(text.find("trials=10") != std::string::npos);
    CHECK(text.find("bottom_count=1") != std::string::npos);
    CHECK(text.find("wrong_message_count=0") != std::string::npos);
    CHECK(text.find("out_of_model=true") != std::string::npos);
    CHECK(text.find("strategy=substitution") != std::string::npos);

    auto j = sim_report_json(r);
    CHECK(j["trials"] == 10);
    CHECK(j["bottom_count"] == 1);
    CHECK(j["by_strategy"][0]["strategy"] == "substitution");
    CHECK(j["out_of_model"] == true);
}
