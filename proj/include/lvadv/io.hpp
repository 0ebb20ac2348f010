#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lvadv/adversary.hpp"
#include "lvadv/errors.hpp"
#include "lvadv/lv.hpp"
#include "lvadv/mac.hpp"

#include <json.hpp>

namespace lvadv {

inline void write_symbols(std::ostream& os, const std::vector<Fe>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << v[i];
    }
    os << '\n';
}

inline std::vector<Fe> read_symbols(std::istream& is, std::size_t count, const char* what) {
    std::vector<Fe> v(count);
    for (std::size_t i = 0; i < count; ++i)
        if (!(is >> v[i])) throw MalformedInputError(std::string(what) + ": expected " +
                                                     std::to_string(count) + " symbols");
    return v;
}

/// Message file: N*u*R decimal symbols, whitespace separated.
inline void write_message_file(const std::string& path, const Message& msg) {
    std::ofstream os(path);
    if (!os) throw MalformedInputError("cannot open for writing: " + path);
    write_symbols(os, msg);
}

inline Message read_message_file(const std::string& path, const LvParams& p) {
    std::ifstream is(path);
    if (!is) throw MalformedInputError("cannot open: " + path);
    Message msg = read_symbols(is, p.msg_len, "message file");
    Fe extra;
    if (is >> extra) throw MalformedInputError("message file: trailing symbols");
    for (Fe m : msg)
        if (m >= p.field.modulus()) throw MalformedInputError("message file: symbol outside field");
    return msg;
}

/// Codeword file: header "N u1 u2 q v l d R", then N lines of u symbols.
inline void write_codeword_file(const std::string& path, const LvParams& p, const LvCodeword& c) {
    std::ofstream os(path);
    if (!os) throw MalformedInputError("cannot open for writing: " + path);
    os << p.block_len << ' ' << p.u1 << ' ' << p.u2 << ' ' << p.field.modulus() << ' ' << p.v << ' '
       << p.l << ' ' << p.d << ' ' << p.rate.str() << '\n';
    for (const auto& comp : c) write_symbols(os, comp);
}

struct CodewordFile {
    LvParams params;
    LvCodeword codeword;
};

inline CodewordFile read_codeword_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw MalformedInputError("cannot open: " + path);
    std::size_t N, u1, u2, v, l, d;
    std::uint64_t q;
    std::string rate_str;
    if (!(is >> N >> u1 >> u2 >> q >> v >> l >> d >> rate_str))
        throw MalformedInputError("codeword file: bad header");
    Rational rate = parse_rational(rate_str);
    LvParams p = derive_params(N, u1, v, rate, q);
    if (p.u2 != u2 || p.l != l || p.d != d)
        throw MalformedInputError("codeword file: header inconsistent with derived parameters");
    CodewordFile out{p, LvCodeword(N)};
    for (std::size_t i = 0; i < N; ++i) {
        out.codeword[i] = read_symbols(is, p.u, "codeword file");
        for (Fe s : out.codeword[i])
            if (s >= q) throw MalformedInputError("codeword file: symbol outside field");
    }
    return out;
}

/// FRS codeword on its own: N lines of u1 symbols.
inline void write_frs_codeword(std::ostream& os, const FrsCodeword& c) {
    for (const auto& col : c) write_symbols(os, col);
}

inline FrsCodeword read_frs_codeword(std::istream& is, const FrsParams& p) {
    FrsCodeword c(p.block_len);
    for (auto& col : c) col = read_symbols(is, p.folding, "frs codeword");
    return c;
}

/// MAC keys and tags carry an "N l d q" header before their symbols.
inline void write_mac_key(std::ostream& os, const MacParams& p, const MacKey& k) {
    os << p.block << ' ' << p.l << ' ' << p.d << ' ' << p.field.modulus() << '\n';
    write_symbols(os, key_to_symbols(k));
}

inline MacKey read_mac_key(std::istream& is, const MacParams& expect) {
    std::size_t N, l, d;
    std::uint64_t q;
    if (!(is >> N >> l >> d >> q)) throw MalformedInputError("mac key: bad header");
    if (N != expect.block || l != expect.l || d != expect.d || q != expect.field.modulus())
        throw MalformedInputError("mac key: header mismatch");
    return key_from_symbols(expect, read_symbols(is, expect.key_len(), "mac key"));
}

inline void write_mac_tag(std::ostream& os, const MacParams& p, const Tag& t) {
    os << p.block << ' ' << p.l << ' ' << p.d << ' ' << p.field.modulus() << '\n';
    write_symbols(os, t);
}

inline std::string sim_report_text(const SimReport& r) {
    std::ostringstream os;
    os << "trials=" << r.trials << '\n'
       << "bottom_count=" << r.bottom_count << '\n'
       << "wrong_message_count=" << r.wrong_message_count << '\n'
       << "delta_empirical=" << r.delta_empirical << '\n'
       << "delta_bound=" << r.delta_bound << '\n'
       << "out_of_model=" << (r.out_of_model ? "true" : "false") << '\n'
       << "seed=" << r.seed << '\n';
    for (const auto& st : r.by_strategy)
        os << "strategy=" << st.strategy << " strategy_trials=" << st.trials << " strategy_bottom="
           << st.bottom << " strategy_wrong=" << st.wrong << '\n';
    os << "note=" << r.note << '\n';
    return os.str();
}

inline nlohmann::json sim_report_json(const SimReport& r) {
    nlohmann::json j{{"trials", r.trials},
                     {"bottom_count", r.bottom_count},
                     {"wrong_message_count", r.wrong_message_count},
                     {"delta_empirical", r.delta_empirical},
                     {"delta_bound", r.delta_bound},
                     {"out_of_model", r.out_of_model},
                     {"seed", r.seed},
                     {"note", r.note}};
    j["by_strategy"] = nlohmann::json::array();
    for (const auto& st : r.by_strategy)
        j["by_strategy"].push_back({{"strategy", st.strategy},
                                    {"trials", st.trials},
                                    {"bottom", st.bottom},
                                    {"wrong", st.wrong}});
    return j;
}

} // namespace lvadv
