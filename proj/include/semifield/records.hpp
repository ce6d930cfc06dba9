#pragma once

// Line-oriented text formats exchanged between pipeline stages.
//
//   tuple stream:   "poly_index, a2, a3, ..., ad"
//   class records:  "class_id, (a2, ..., ad), aut, at, num/den, inventory, orbit, flags"
//
// Class files start with a "# mode=<mode> p=<p> d=<d>" header; fields that a
// mode does not compute are written as "-".

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semifield/classify.hpp"
#include "semifield/errors.hpp"
#include "semifield/rational.hpp"

namespace semifield {

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Splits on commas outside parentheses.
inline std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '(') ++depth;
        if (line[i] == ')') --depth;
        if (depth < 0) throw ParseError("unbalanced parentheses in: " + std::string(line));
        if (line[i] == ',' && depth == 0) {
            out.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced parentheses in: " + std::string(line));
    out.push_back(trim(line.substr(start)));
    return out;
}

inline std::uint64_t parse_u64(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("expected an unsigned integer, got '" + s + "'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ParseError("integer out of range: '" + s + "'");
    }
}

inline bool is_skippable(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t[0] == '#';
}

}  // namespace detail

/// Parses "(a, b, c)", "a, b, c" or "a b c".
inline std::vector<std::uint64_t> parse_code_tuple(std::string_view text) {
    std::string s = detail::trim(text);
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw ParseError("unterminated tuple: " + s);
        s = s.substr(1, s.size() - 2);
    }
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<std::uint64_t> out;
    std::string tok;
    while (in >> tok) out.push_back(detail::parse_u64(tok));
    if (out.empty()) throw ParseError("empty code tuple");
    return out;
}

inline std::string format_code_tuple(std::span<const std::uint64_t> codes) {
    std::string s = "(";
    for (std::size_t i = 0; i < codes.size(); ++i) s += (i ? ", " : "") + std::to_string(codes[i]);
    return s + ")";
}

struct TupleRecord {
    std::size_t poly_index = 0;
    std::vector<std::uint64_t> codes;  // a2..ad

    friend bool operator==(const TupleRecord&, const TupleRecord&) = default;
    friend auto operator<=>(const TupleRecord&, const TupleRecord&) = default;
};

inline std::string format_tuple_record(const TupleRecord& r) {
    std::string s = std::to_string(r.poly_index);
    for (auto c : r.codes) s += ", " + std::to_string(c);
    return s;
}

inline TupleRecord parse_tuple_record(const std::string& line, FieldSpec f) {
    const auto fields = detail::split_fields(line);
    if (fields.size() != f.d()) throw ParseError("expected " + std::to_string(f.d()) + " fields in: " + line);
    TupleRecord r;
    r.poly_index = detail::parse_u64(fields[0]);
    for (std::size_t i = 1; i < fields.size(); ++i) r.codes.push_back(detail::parse_u64(fields[i]));
    return r;
}

inline TupleRecord tuple_record(std::size_t poly_index, const StandardSet& s) { return {poly_index, s.codes()}; }

enum class ClassMode { Isomorphism, Isotopy, S3 };

inline std::string to_string(ClassMode m) {
    switch (m) {
        case ClassMode::Isomorphism: return "isomorphism";
        case ClassMode::Isotopy: return "isotopy";
        case ClassMode::S3: return "s3";
    }
    return "?";
}

inline ClassMode parse_mode(const std::string& s) {
    if (s == "isomorphism") return ClassMode::Isomorphism;
    if (s == "isotopy") return ClassMode::Isotopy;
    if (s == "s3") return ClassMode::S3;
    throw ParseError("unknown classification mode '" + s + "'");
}

/// One persisted class.
struct ClassFileRecord {
    std::size_t id = 0;
    std::vector<std::uint64_t> representative;
    std::uint64_t aut_order = 1;
    std::optional<std::uint64_t> at_order;
    std::optional<Fraction> sa_sum;
    std::optional<std::string> inventory;
    std::optional<std::size_t> orbit_size;
    std::set<std::string> flags;

    bool has(const std::string& flag) const { return flags.count(flag) != 0; }
    friend bool operator==(const ClassFileRecord&, const ClassFileRecord&) = default;
};

struct ClassFile {
    ClassMode mode = ClassMode::Isomorphism;
    FieldSpec spec;
    std::vector<ClassFileRecord> records;

    std::size_t commutative_count() const {
        return static_cast<std::size_t>(
            std::count_if(records.begin(), records.end(), [](const auto& r) { return r.has("commutative"); }));
    }
};

inline ClassFileRecord to_file_record(std::size_t id, const IsoClassRecord& r, bool associative) {
    ClassFileRecord out;
    out.id = id;
    out.representative.assign(r.key.view().begin(), r.key.view().end());
    out.aut_order = r.aut_order;
    if (r.commutative) out.flags.insert("commutative");
    if (associative) out.flags.insert("associative");
    return out;
}

inline ClassFileRecord to_file_record(std::size_t id, const PlaneClassRecord& r) {
    ClassFileRecord out;
    out.id = id;
    out.representative.assign(r.representative.view().begin(), r.representative.view().end());
    out.aut_order = r.aut_order;
    out.at_order = r.at_order;
    out.sa_sum = r.sa_sum;
    out.inventory = format_inventory(r.inventory);
    out.orbit_size = r.orbit_size;
    if (r.commutative) out.flags.insert("commutative");
    if (r.associative) out.flags.insert("associative");
    if (r.orbit.self_dual()) out.flags.insert("self-dual");
    if (r.orbit.self_transpose()) out.flags.insert("self-transpose");
    return out;
}

inline std::string format_class_record(const ClassFileRecord& r) {
    auto opt = [](const auto& o, auto fn) { return o ? fn(*o) : std::string("-"); };
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : "|") + f;
    std::ostringstream os;
    os << r.id << ", " << format_code_tuple(r.representative) << ", " << r.aut_order << ", "
       << opt(r.at_order, [](auto v) { return std::to_string(v); }) << ", "
       << opt(r.sa_sum, [](const Fraction& v) { return v.str(); }) << ", "
       << opt(r.inventory, [](const std::string& v) { return v; }) << ", "
       << opt(r.orbit_size, [](auto v) { return std::to_string(v); }) << ", " << (flags.empty() ? "-" : flags);
    return os.str();
}

inline ClassFileRecord parse_class_record(const std::string& line) {
    const auto f = detail::split_fields(line);
    if (f.size() != 8) throw ParseError("expected 8 fields in class record: " + line);
    ClassFileRecord r;
    r.id = detail::parse_u64(f[0]);
    r.representative = parse_code_tuple(f[1]);
    r.aut_order = detail::parse_u64(f[2]);
    if (f[3] != "-") r.at_order = detail::parse_u64(f[3]);
    if (f[4] != "-") {
        const auto slash = f[4].find('/');
        if (slash == std::string::npos) throw ParseError("bad fraction '" + f[4] + "'");
        r.sa_sum = Fraction(detail::parse_u64(f[4].substr(0, slash)), detail::parse_u64(f[4].substr(slash + 1)));
    }
    if (f[5] != "-") r.inventory = f[5];
    if (f[6] != "-") r.orbit_size = detail::parse_u64(f[6]);
    if (f[7] != "-") {
        std::istringstream in(f[7]);
        std::string tok;
        while (std::getline(in, tok, '|')) r.flags.insert(detail::trim(tok));
    }
    return r;
}

inline void write_class_file(std::ostream& os, const ClassFile& cf) {
    os << "# mode=" << to_string(cf.mode) << " p=" << cf.spec.p() << " d=" << cf.spec.d()
       << " classes=" << cf.records.size() << " commutative=" << cf.commutative_count() << "\n";
    os << "# class_id, representative, aut_order, at_order, sa_sum, inventory, orbit_size, flags\n";
    for (const auto& r : cf.records) os << format_class_record(r) << "\n";
}

/// Parses the "# mode=... p=... d=..." header if `line` is one.
inline std::optional<std::pair<ClassMode, FieldSpec>> parse_class_header(const std::string& line) {
    const std::string t = detail::trim(line);
    if (t.rfind("# mode=", 0) != 0) return std::nullopt;
    std::istringstream in(t.substr(2));
    std::string tok, mode;
    std::uint32_t p = 0, d = 0;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "mode") mode = val;
        if (key == "p") p = static_cast<std::uint32_t>(detail::parse_u64(val));
        if (key == "d") d = static_cast<std::uint32_t>(detail::parse_u64(val));
    }
    return std::pair{parse_mode(mode), FieldSpec(p, d)};
}

inline ClassFile read_class_file(std::istream& in) {
    ClassFile cf;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!header) {
            if (auto h = parse_class_header(line)) {
                cf.mode = h->first;
                cf.spec = h->second;
                header = true;
            }
            continue;
        }
        if (detail::is_skippable(line)) continue;
        cf.records.push_back(parse_class_record(line));
    }
    if (!header) throw ParseError("class file has no '# mode=' header");
    return cf;
}

}  // namespace semifield
