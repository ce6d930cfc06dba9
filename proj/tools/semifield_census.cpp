// Command-line driver for the semifield census pipeline:
//
//   semifield_census search   --p 3 --d 4 [--poly all|<i>] [--shards n] [--resume] --output tuples.txt
//   semifield_census classify --input tuples.txt --mode isomorphism|isotopy|s3 --output classes.txt
//   semifield_census report   --input classes.txt [--input ...] --format table1|table2|lines
//   semifield_census inspect  19792 8866 186745 [--at] [--orbit]

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semifield.hpp"

namespace fs = std::filesystem;
using namespace semifield;

namespace {

struct SearchUnit {
    std::size_t poly_index;
    std::optional<std::uint64_t> column;

    std::string file_name() const {
        return "poly" + std::to_string(poly_index) + "_col" + (column ? std::to_string(*column) : std::string("all")) +
               ".txt";
    }
};

std::size_t count_lines(const fs::path& p) {
    std::ifstream in(p);
    std::size_t n = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++n;
    return n;
}

void run_unit(const Poly& poly, const SearchUnit& u, std::ostream& out, std::size_t& count) {
    complete_search(SearchConfig::for_poly(poly, u.column), [&](const StandardSet& s) {
        out << format_tuple_record(tuple_record(u.poly_index, s)) << "\n";
        ++count;
    });
}

int cmd_search(std::uint32_t p, std::uint32_t d, const std::string& poly_filter, unsigned shards, bool resume,
               const std::string& output) {
    const FieldSpec f(p, d);
    const auto polys = primitive_polys(f);
    std::vector<std::size_t> selected;
    if (poly_filter == "all") {
        for (std::size_t i = 1; i <= polys.size(); ++i) selected.push_back(i);
    } else {
        const std::size_t i = std::stoul(poly_filter);
        if (i < 1 || i > polys.size()) {
            std::cerr << "error: --poly must be in [1, " << polys.size() << "] or 'all'\n";
            return 2;
        }
        selected.push_back(i);
    }

    std::map<std::size_t, std::size_t> counts;
    const bool sharded = shards > 0 || resume;
    if (sharded && output.empty()) {
        std::cerr << "error: --shards/--resume need --output (checkpoints live next to it)\n";
        return 2;
    }

    if (!sharded) {
        std::ofstream file;
        if (!output.empty()) {
            file.open(output);
            if (!file) {
                std::cerr << "error: cannot write " << output << "\n";
                return 1;
            }
        }
        std::ostream discard(nullptr);
        for (const std::size_t i : selected) {
            std::size_t n = 0;
            run_unit(polys[i - 1], {i, std::nullopt}, output.empty() ? discard : file, n);
            counts[i] = n;
        }
        if (file.is_open() && !file) {
            std::cerr << "error: write to " << output << " failed\n";
            return 1;
        }
    } else {
        const fs::path dir = fs::path(output).concat(".shards");
        fs::create_directories(dir);
        std::vector<SearchUnit> units;
        for (const std::size_t i : selected) {
            const auto cols = shard_columns(SearchConfig::for_poly(polys[i - 1]));
            if (cols.empty()) units.push_back({i, std::nullopt});
            for (const auto c : cols) units.push_back({i, c});
        }
        std::vector<std::size_t> unit_counts(units.size(), 0);
        parallel_for(units.size(), shards, [&](std::size_t k) {
            const fs::path done = dir / units[k].file_name();
            if (resume && fs::exists(done)) {
                unit_counts[k] = count_lines(done);
                return;
            }
            const fs::path tmp = fs::path(done).concat(".tmp");
            {
                std::ofstream out(tmp);
                if (!out) throw Error("cannot write " + tmp.string());
                run_unit(polys[units[k].poly_index - 1], units[k], out, unit_counts[k]);
                if (!out) throw Error("write to " + tmp.string() + " failed");
            }
            fs::rename(tmp, done);
        });
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return 1;
        }
        for (std::size_t k = 0; k < units.size(); ++k) {
            std::ifstream in(dir / units[k].file_name());
            if (!in) throw Error("missing checkpoint " + (dir / units[k].file_name()).string());
            // Streaming an empty buffer would set failbit on `out`.
            if (in.peek() != std::ifstream::traits_type::eof()) out << in.rdbuf();
            counts[units[k].poly_index] += unit_counts[k];
        }
        if (!out.flush()) {
            std::cerr << "error: write to " << output << " failed\n";
            return 1;
        }
    }

    std::size_t total = 0;
    for (const auto& [i, n] : counts) {
        std::cout << "poly " << i << " (" << polys[i - 1] << "): " << n << "\n";
        total += n;
    }
    std::cout << "total: " << total << "\n";
    return 0;
}

/// Representatives from a tuple stream or from a class file of an earlier stage.
std::vector<StandardSet> read_sets(const std::string& path, FieldSpec fallback) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::vector<StandardSet> sets;
    std::string line;
    std::optional<FieldSpec> class_spec;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!class_spec && sets.empty()) {
            if (auto h = parse_class_header(line)) {
                class_spec = h->second;
                continue;
            }
        }
        if (detail::is_skippable(line)) continue;
        try {
            if (class_spec) {
                sets.push_back(standard_set_from_codes(*class_spec, parse_class_record(line).representative));
            } else {
                sets.push_back(standard_set_from_codes(fallback, parse_tuple_record(line, fallback).codes));
            }
        } catch (const Error& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return sets;
}

nlohmann::json to_json(const ClassFileRecord& r) {
    nlohmann::json j;
    j["class_id"] = r.id;
    j["representative"] = r.representative;
    j["aut_order"] = r.aut_order;
    j["at_order"] = r.at_order ? nlohmann::json(*r.at_order) : nlohmann::json(nullptr);
    j["sa_sum"] = r.sa_sum ? nlohmann::json(r.sa_sum->str()) : nlohmann::json(nullptr);
    j["inventory"] = r.inventory ? nlohmann::json(*r.inventory) : nlohmann::json(nullptr);
    j["orbit_size"] = r.orbit_size ? nlohmann::json(*r.orbit_size) : nlohmann::json(nullptr);
    j["flags"] = r.flags;
    return j;
}

int cmd_classify(const std::string& input, const std::string& mode_name, const std::string& output,
                 const std::string& json_path, std::uint32_t p, std::uint32_t d, unsigned threads) {
    const ClassMode mode = parse_mode(mode_name);
    const FieldSpec fallback(p, d);
    const std::vector<StandardSet> sets = read_sets(input, fallback);
    ClassFile cf;
    cf.mode = mode;
    cf.spec = sets.empty() ? fallback : sets.front().spec();

    const auto iso = isomorphism_classes(sets, threads);
    if (mode == ClassMode::Isomorphism) {
        for (std::size_t i = 0; i < iso.size(); ++i)
            cf.records.push_back(to_file_record(i + 1, iso[i], is_associative(set_from_key(cf.spec, iso[i].key))));
    } else {
        std::vector<StandardSet> reps;
        for (const auto& r : iso) reps.push_back(set_from_key(cf.spec, r.key));
        const auto planes = mode == ClassMode::Isotopy ? isotopy_classes(reps, threads) : s3_classes(reps, threads);
        for (std::size_t i = 0; i < planes.size(); ++i) cf.records.push_back(to_file_record(i + 1, planes[i]));
    }

    if (!output.empty()) {
        std::ofstream out(output);
        write_class_file(out, cf);
        if (!out) {
            std::cerr << "error: write to " << output << " failed\n";
            return 1;
        }
    } else {
        write_class_file(std::cout, cf);
    }
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        for (const auto& r : cf.records) out << to_json(r).dump() << "\n";
        if (!out) {
            std::cerr << "error: write to " << json_path << " failed\n";
            return 1;
        }
    }
    std::cout << cf.records.size() << " (" << cf.commutative_count() << " commutative)\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& format, const std::string& output,
               unsigned threads) {
    std::vector<ClassFile> files;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw Error("cannot read " + path);
        files.push_back(read_class_file(in));
    }
    std::string text;
    if (format == "table1") {
        const ClassFile* s3 = nullptr;
        for (const auto& f : files)
            if (f.mode == ClassMode::S3) s3 = &f;
        if (!s3) throw Error("table1 needs an s3 class file");
        if (!(s3->spec == FieldSpec(3, 4))) throw Error("the plane fixtures are for order 81 (p=3, d=4)");
        text = format_table1(plane_rows(*s3, plane_fixtures_81(), threads));
    } else if (format == "table2") {
        text = format_table2(files);
    } else if (format == "lines") {
        std::ostringstream os;
        for (const auto& f : files) write_class_file(os, f);
        text = os.str();
    } else {
        std::cerr << "error: unknown --format '" << format << "'\n";
        return 2;
    }
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        out << text;
        if (!out) {
            std::cerr << "error: write to " << output << " failed\n";
            return 1;
        }
    }
    return 0;
}

int cmd_inspect(const std::vector<std::uint64_t>& codes, std::uint32_t p, std::uint32_t d, bool with_at,
                bool with_orbit, unsigned threads) {
    const FieldSpec f(p, d);
    StandardSet s;
    try {
        s = standard_set_from_codes(f, codes);
    } catch (const Error& e) {
        std::cerr << "InvalidTuple: " << e.what() << "\n";
        return 1;
    }
    for (std::size_t i = 0; i < s.dim(); ++i) {
        std::cout << "A_" << i + 1 << " (code " << encode_matrix(s.matrix(i)).value << ", char poly "
                  << char_poly(s.matrix(i)) << ")\n"
                  << s.matrix(i) << "\n";
    }
    const Predicates pr = predicates(s);
    std::cout << (pr.commutative ? "commutative" : "not commutative") << ", "
              << (pr.associative ? "associative" : "not associative") << ", |Aut| = " << aut_order(s) << "\n";
    std::cout << "canonical key: " << to_string(canonical_key(s)) << "\n";
    if (with_at || with_orbit) {
        const IsotopeExpansion e = expand_isotopes(s, threads);
        if (with_at) {
            const IsotopeInventory inv = inventory_from(f, e, threads);
            std::cout << "isotopes: " << inv.classes.size() << " isomorphism classes, S/A sum "
                      << format_inventory(inv.by_aut) << " = " << inv.sa_sum << "\n";
            std::cout << "|At| = " << at_order_from(f, inv.sa_sum) << "\n";
        }
        if (with_orbit) {
            const OrbitStructure o = orbit_from(s, e);
            std::cout << "S3 orbit size: " << o.orbit_size << "\n";
            for (const auto& group : o.partition) {
                std::cout << "  {";
                for (std::size_t i = 0; i < group.size(); ++i) std::cout << (i ? ", " : "") << group[i].name();
                std::cout << "}\n";
            }
            std::cout << "self-dual: " << (o.self_dual() ? "yes" : "no")
                      << ", self-transpose: " << (o.self_transpose() ? "yes" : "no") << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exhaustive search and classification of finite semifields of order p^d"};
    app.require_subcommand(1);

    std::uint32_t p = 3, d = 4;
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads for classification (0 = all cores)");

    auto* search = app.add_subcommand("search", "Enumerate all standard sets with a primitive companion A_2");
    std::string poly = "all", search_out;
    unsigned shards = 0;
    bool resume = false;
    search->add_option("--p", p, "Characteristic")->capture_default_str();
    search->add_option("--d", d, "Dimension")->capture_default_str();
    search->add_option("--poly", poly, "Primitive polynomial index (1-based) or 'all'")->capture_default_str();
    search->add_option("--shards", shards, "Run shards on this many workers with checkpoint files");
    search->add_flag("--resume", resume, "Reuse completed shard checkpoints");
    search->add_option("--output", search_out, "Tuple stream output path");

    auto* classify = app.add_subcommand("classify", "Classify a tuple stream up to isomorphism, isotopy or S3 action");
    std::string cls_in, mode = "isomorphism", cls_out, json_out;
    classify->add_option("--input", cls_in, "Tuple stream or class file")->required();
    classify->add_option("--mode", mode, "isomorphism | isotopy | s3")->capture_default_str();
    classify->add_option("--output", cls_out, "Class records output path");
    classify->add_option("--json", json_out, "Structured export (one JSON object per line)");
    classify->add_option("--p", p, "Characteristic of a raw tuple stream")->capture_default_str();
    classify->add_option("--d", d, "Dimension of a raw tuple stream")->capture_default_str();

    auto* report = app.add_subcommand("report", "Render class files as per-plane or summary tables");
    std::vector<std::string> rep_in;
    std::string format = "table2", rep_out;
    report->add_option("--input", rep_in, "Class file(s)")->required();
    report->add_option("--format", format, "table1 | table2 | lines")->capture_default_str();
    report->add_option("--output", rep_out, "Output path (default stdout)");

    auto* inspect = app.add_subcommand("inspect", "Describe one semifield given by its matrix codes");
    std::vector<std::uint64_t> codes;
    bool with_at = false, with_orbit = false;
    inspect->add_option("codes", codes, "Matrix codes (a2 ... ad) or (a1 ... ad)")->required();
    inspect->add_option("--p", p, "Characteristic")->capture_default_str();
    inspect->add_option("--d", d, "Dimension")->capture_default_str();
    inspect->add_flag("--at", with_at, "Also compute the isotope inventory and autotopy order");
    inspect->add_flag("--orbit", with_orbit, "Also compute the S3 orbit structure");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*search) return cmd_search(p, d, poly, shards, resume, search_out);
        if (*classify) return cmd_classify(cls_in, mode, cls_out, json_out, p, d, threads);
        if (*report) return cmd_report(rep_in, format, rep_out, threads);
        if (*inspect) return cmd_inspect(codes, p, d, with_at, with_orbit, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
