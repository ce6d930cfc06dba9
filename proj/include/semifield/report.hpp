#pragma once

// Census reports: per-plane rows (autotopy order, isotope inventory, orbit
// data) labelled by fixture match, and the class-count summary.

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "semifield/classify.hpp"
#include "semifield/fixtures.hpp"
#include "semifield/records.hpp"

namespace semifield {

class AmbiguousFixtureMatch : public Error {
public:
    using Error::Error;
};

struct PlaneRow {
    std::string label;  // fixture label, or "-" for an unlabelled class
    std::string status; // "known", "new" or "-"
    std::size_t class_id = 0;
    std::vector<std::uint64_t> codes;
    std::uint64_t aut_order = 1;
    std::uint64_t at_order = 1;
    std::string inventory;
    Fraction sa_sum;
    std::size_t orbit_size = 1;
    bool self_dual = false;
    bool self_transpose = false;
};

/// Keys of the six unitalized index-permuted planes of s.
inline std::vector<CanonicalKey> sigma_keys(const StandardSet& s) {
    std::vector<CanonicalKey> out;
    for (const PermS3 sigma : PermS3::all()) out.push_back(sigma_key(s, sigma));
    return out;
}

/// Assigns each fixture to the unique S3 class whose representative is isotopic to
/// one of the fixture's permuted planes; throws AmbiguousFixtureMatch unless the
/// matching is injective and total on fixtures.
inline std::vector<PlaneRow> plane_rows(const ClassFile& s3, const std::vector<KnownPlaneFixture>& fixtures,
                                        unsigned threads = 0) {
    if (s3.mode != ClassMode::S3) throw AmbiguousFixtureMatch("plane rows need an s3 class file");
    const FieldSpec f = s3.spec;
    std::vector<IsotopeExpansion> class_sets;
    for (const auto& r : s3.records) class_sets.push_back(expand_isotopes(standard_set_from_codes(f, r.representative), threads));

    std::vector<PlaneRow> rows;
    std::vector<bool> used(s3.records.size(), false);
    for (const auto& fx : fixtures) {
        const StandardSet s = standard_set_from_codes(f, fx.codes);
        const auto keys = sigma_keys(s);
        std::optional<std::size_t> match;
        for (std::size_t c = 0; c < class_sets.size(); ++c) {
            const bool hit = std::any_of(keys.begin(), keys.end(), [&](const auto& k) { return class_sets[c].contains(k); });
            if (!hit) continue;
            if (match) throw AmbiguousFixtureMatch("plane " + std::string(fx.label) + " matches several classes");
            match = c;
        }
        if (!match) throw AmbiguousFixtureMatch("plane " + std::string(fx.label) + " matches no class");
        if (used[*match]) throw AmbiguousFixtureMatch("two planes match class " + std::to_string(s3.records[*match].id));
        used[*match] = true;

        const IsotopeExpansion own = expand_isotopes(s, threads);
        const IsotopeInventory inv = inventory_from(f, own, threads);
        const OrbitStructure orbit = orbit_from(s, own);
        PlaneRow row;
        row.label = fx.label;
        row.status = fx.known ? "known" : "new";
        row.class_id = s3.records[*match].id;
        row.codes.assign(fx.codes.begin(), fx.codes.end());
        row.aut_order = aut_order(s);
        row.sa_sum = inv.sa_sum;
        row.at_order = at_order_from(f, inv.sa_sum);
        row.inventory = format_inventory(inv.by_aut);
        row.orbit_size = orbit.orbit_size;
        row.self_dual = orbit.self_dual();
        row.self_transpose = orbit.self_transpose();
        rows.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < s3.records.size(); ++c) {
        if (used[c]) continue;
        const auto& r = s3.records[c];
        PlaneRow row;
        row.label = "-";
        row.status = "-";
        row.class_id = r.id;
        row.codes = r.representative;
        row.aut_order = r.aut_order;
        row.at_order = r.at_order.value_or(0);
        row.sa_sum = r.sa_sum.value_or(Fraction());
        row.inventory = r.inventory.value_or("-");
        row.orbit_size = r.orbit_size.value_or(0);
        row.self_dual = r.has("self-dual");
        row.self_transpose = r.has("self-transpose");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string format_table1(const std::vector<PlaneRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "Plane" << std::setw(8) << "Status" << std::setw(7) << "Class" << std::setw(28)
       << "Representative" << std::setw(7) << "|Aut|" << std::setw(13) << "Order of At" << std::setw(16) << "S/A sum"
       << std::setw(7) << "Orbit" << "Flags\n";
    for (const auto& r : rows) {
        std::string flags;
        if (r.self_dual) flags += "self-dual";
        if (r.self_transpose) flags += std::string(flags.empty() ? "" : "|") + "self-transpose";
        os << std::left << std::setw(6) << r.label << std::setw(8) << r.status << std::setw(7) << r.class_id
           << std::setw(28) << format_code_tuple(r.codes) << std::setw(7) << r.aut_order << std::setw(13) << r.at_order
           << std::setw(16) << r.inventory << std::setw(7) << r.orbit_size << (flags.empty() ? "-" : flags) << "\n";
    }
    return os.str();
}

/// Summary row of class counts, commutative counts in parentheses.
inline std::string format_table2(const std::vector<ClassFile>& files) {
    auto cell = [&](ClassMode m) -> std::string {
        for (const auto& f : files)
            if (f.mode == m) return std::to_string(f.records.size()) + " (" + std::to_string(f.commutative_count()) + ")";
        return "-";
    };
    std::ostringstream os;
    os << std::left << std::setw(34) << "Number of (commutative) classes" << std::setw(14) << "Isomorphism"
       << std::setw(10) << "Isotopy" << "S3-action\n";
    os << std::left << std::setw(34) << "Actual number" << std::setw(14) << cell(ClassMode::Isomorphism)
       << std::setw(10) << cell(ClassMode::Isotopy) << cell(ClassMode::S3) << "\n";
    return os.str();
}

}  // namespace semifield
