#include "wccmine/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <system_error>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "wccmine/errors.hpp"

namespace wccmine {

namespace {

using nlohmann::json;

constexpr char kListSep = ';';
constexpr char kFieldSep = ',';

std::string trim(std::string_view s) {
    std::size_t first = 0;
    std::size_t last = s.size();
    while (first < last && std::isspace(static_cast<unsigned char>(s[first])))
        ++first;
    while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1])))
        --last;
    return std::string(s.substr(first, last - first));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::string location(const std::filesystem::path& path, std::size_t line) {
    return path.string() + ":" + std::to_string(line);
}

[[noreturn]] void fail(const std::filesystem::path& path, std::size_t line,
                       const std::string& message) {
    throw DataError(location(path, line) + ": " + message);
}

void check_reserved(const std::filesystem::path& path, std::size_t line,
                    const std::string& name) {
    if (name.find(kListSep) != std::string::npos ||
        name.find(kFieldSep) != std::string::npos)
        fail(path, line,
             "item name '" + name + "' contains a reserved separator");
}

// Builds one side's itemset from raw names: trims, validates, collapses
// duplicates with a warning.
ItemSet parse_items(const std::filesystem::path& path, std::size_t line,
                    Namespace ns, const std::vector<std::string>& raw,
                    const char* field, LoadReport* report) {
    std::vector<Item> items;
    std::unordered_set<std::string> seen;
    for (const std::string& name : raw) {
        check_reserved(path, line, name);
        Item item(ns, name);
        if (!seen.insert(item.name()).second) {
            if (report)
                report->warnings.push_back(
                    location(path, line) + ": duplicate item '" + item.name() +
                    "' in '" + field + "' collapsed");
            continue;
        }
        items.push_back(std::move(item));
    }
    return ItemSet(std::move(items));
}

std::vector<std::string> json_string_array(const std::filesystem::path& path,
                                           std::size_t line, const json& rec,
                                           const char* field) {
    if (!rec.contains(field))
        fail(path, line, std::string("record needs a '") + field + "' list");
    const json& value = rec.at(field);
    if (!value.is_array())
        fail(path, line, std::string("field '") + field + "' must be an array");
    std::vector<std::string> out;
    out.reserve(value.size());
    for (const json& element : value) {
        if (!element.is_string())
            fail(path, line,
                 std::string("field '") + field + "' must contain strings");
        out.push_back(element.get<std::string>());
    }
    return out;
}

struct RawRecord {
    std::string id;
    bool generic = false;
    ItemSet antecedent_items;
    ItemSet consequent_items;
    ItemSet generic_items;
};

RawRecord parse_json_record(const std::filesystem::path& path,
                            std::size_t line, const std::string& text,
                            LoadReport* report) {
    json rec;
    try {
        rec = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(path, line, std::string("unparseable line: ") + e.what());
    }
    if (!rec.is_object())
        fail(path, line, "record must be a JSON object");
    for (const auto& [key, value] : rec.items()) {
        if (key != "id" && key != "items" && key != "issues" && key != "techs")
            fail(path, line, "unknown field '" + key + "'");
    }
    if (!rec.contains("id") || !rec.at("id").is_string())
        fail(path, line, "record needs a string 'id'");

    RawRecord out;
    out.id = trim(rec.at("id").get<std::string>());
    const bool has_items = rec.contains("items");
    const bool has_sides = rec.contains("issues") || rec.contains("techs");
    if (has_items && has_sides)
        fail(path, line, "record mixes 'items' with 'issues'/'techs'");
    if (!has_items && !has_sides)
        fail(path, line, "record has no item lists");
    if (has_items) {
        out.generic = true;
        out.generic_items =
            parse_items(path, line, Namespace::Generic,
                        json_string_array(path, line, rec, "items"), "items",
                        report);
    } else {
        out.generic = false;
        if (rec.contains("issues"))
            out.antecedent_items =
                parse_items(path, line, Namespace::Issue,
                            json_string_array(path, line, rec, "issues"),
                            "issues", report);
        if (rec.contains("techs"))
            out.consequent_items =
                parse_items(path, line, Namespace::Tech,
                            json_string_array(path, line, rec, "techs"),
                            "techs", report);
    }
    return out;
}

std::vector<std::string> parse_item_cell(const std::string& cell) {
    std::vector<std::string> out;
    if (trim(cell).empty())
        return out;
    for (const std::string& piece : split(cell, kListSep))
        out.push_back(piece);
    return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    return out;
}

TransactionDatabase build_database(std::vector<RawRecord> records,
                                   const std::filesystem::path& path,
                                   const std::vector<std::size_t>& lines) {
    std::vector<Transaction> txs;
    txs.reserve(records.size());
    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < records.size(); ++i) {
        RawRecord& rec = records[i];
        if (!ids.insert(rec.id).second)
            fail(path, lines[i], "duplicate transaction id '" + rec.id + "'");
        if (rec.generic != records.front().generic)
            fail(path, lines[i],
                 "file mixes generic and two-namespace records");
        try {
            if (rec.generic)
                txs.emplace_back(std::move(rec.id),
                                 std::move(rec.generic_items));
            else
                txs.emplace_back(std::move(rec.id),
                                 std::move(rec.antecedent_items),
                                 std::move(rec.consequent_items));
        } catch (const DataError& e) {
            fail(path, lines[i], e.what());
        }
    }
    return TransactionDatabase(std::move(txs));
}

TransactionDatabase load_jsonl_dataset(const std::filesystem::path& path,
                                       LoadReport* report) {
    std::ifstream in = open_input(path);
    std::vector<RawRecord> records;
    std::vector<std::size_t> lines;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty())
            continue;
        records.push_back(parse_json_record(path, line, text, report));
        lines.push_back(line);
    }
    return build_database(std::move(records), path, lines);
}

TransactionDatabase load_csv_dataset(const std::filesystem::path& path,
                                     LoadReport* report) {
    std::ifstream in = open_input(path);
    std::string text;
    if (!std::getline(in, text))
        throw DataError(path.string() + ": missing header line");
    std::vector<std::string> header = split(trim(text), kFieldSep);
    for (std::string& h : header)
        h = trim(h);
    bool generic = false;
    if (header == std::vector<std::string>{"id", "items"})
        generic = true;
    else if (header != std::vector<std::string>{"id", "issues", "techs"})
        fail(path, 1,
             "header must be 'id,items' or 'id,issues,techs', got '" +
                 trim(text) + "'");

    std::vector<RawRecord> records;
    std::vector<std::size_t> lines;
    std::size_t line = 1;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty())
            continue;
        const std::vector<std::string> fields = split(text, kFieldSep);
        if (fields.size() != header.size())
            fail(path, line,
                 "expected " + std::to_string(header.size()) +
                     " fields, got " + std::to_string(fields.size()));
        RawRecord rec;
        rec.id = trim(fields[0]);
        rec.generic = generic;
        try {
            if (generic) {
                rec.generic_items =
                    parse_items(path, line, Namespace::Generic,
                                parse_item_cell(fields[1]), "items", report);
            } else {
                rec.antecedent_items =
                    parse_items(path, line, Namespace::Issue,
                                parse_item_cell(fields[1]), "issues", report);
                rec.consequent_items =
                    parse_items(path, line, Namespace::Tech,
                                parse_item_cell(fields[2]), "techs", report);
            }
        } catch (const DataError& e) {
            const std::string what = e.what();
            if (what.rfind(path.string() + ":", 0) == 0)
                throw;
            fail(path, line, what);
        }
        records.push_back(std::move(rec));
        lines.push_back(line);
    }
    return build_database(std::move(records), path, lines);
}

// Measures serialized in a fixed order so equal inputs write equal bytes.
std::vector<Measure> sorted_measures(const std::map<Measure, double>& scores) {
    std::vector<Measure> out;
    for (const auto& [m, value] : scores)
        out.push_back(m);
    return out;
}

void check_uniform_measures(const std::vector<ScoredRule>& rules) {
    if (rules.empty())
        return;
    const std::vector<Measure> first = sorted_measures(rules.front().scores);
    for (const ScoredRule& r : rules)
        if (sorted_measures(r.scores) != first)
            throw UsageError("rules carry different measure sets");
}

bool rule_is_generic(const Rule& rule) {
    const Namespace ant = rule.antecedent().ns();
    const Namespace cons = rule.consequent().ns();
    if (ant == Namespace::Generic && cons == Namespace::Generic)
        return true;
    if (ant == Namespace::Issue && cons == Namespace::Tech)
        return false;
    throw UsageError("rules must map issues to technologies or be generic");
}

const char* mode_string(bool generic) {
    return generic ? "generic" : "two_namespace";
}

bool mode_from_string(const std::filesystem::path& path, std::size_t line,
                      const std::string& mode) {
    if (mode == "generic")
        return true;
    if (mode == "two_namespace")
        return false;
    fail(path, line, "unknown mode '" + mode + "'");
}

void check_writable_names(const ItemSet& s) {
    for (const Item& item : s)
        if (item.name().find(kListSep) != std::string::npos ||
            item.name().find(kFieldSep) != std::string::npos)
            throw DataError("item name '" + item.name() +
                            "' contains a reserved separator");
}

std::string join_names(const ItemSet& s) {
    std::string out;
    for (const Item& item : s) {
        if (!out.empty())
            out += kListSep;
        out += item.name();
    }
    return out;
}

json names_json(const ItemSet& s) {
    json out = json::array();
    for (const Item& item : s)
        out.push_back(item.name());
    return out;
}

json rule_record(const ScoredRule& r, bool generic,
                 std::optional<ListLabel> label) {
    check_writable_names(r.rule.antecedent());
    check_writable_names(r.rule.consequent());
    json rec;
    rec["mode"] = mode_string(generic);
    rec["antecedent"] = names_json(r.rule.antecedent());
    rec["consequent"] = names_json(r.rule.consequent());
    rec["cf_x"] = r.freq.cf_x();
    rec["cf_y"] = r.freq.cf_y();
    rec["cf_xy"] = r.freq.cf_xy();
    rec["n"] = r.freq.n();
    json scores = json::object();
    json display = json::object();
    for (const auto& [m, value] : r.scores) {
        scores[std::string(to_string(m))] = value;
        display[std::string(to_string(m))] = display_score(value);
    }
    rec["scores"] = scores;
    rec["display"] = display;
    if (label)
        rec["label"] = std::string(to_string(*label));
    return rec;
}

void write_rule_rows(const std::vector<ScoredRule>& rules,
                     const std::vector<ListLabel>* labels, std::ostream& out,
                     FileFormat format) {
    check_uniform_measures(rules);
    const bool generic = rules.empty() ? false : rule_is_generic(rules.front().rule);
    for (const ScoredRule& r : rules)
        if (rule_is_generic(r.rule) != generic)
            throw UsageError("rules mix generic and two-namespace modes");

    if (format == FileFormat::Jsonl) {
        for (std::size_t i = 0; i < rules.size(); ++i) {
            std::optional<ListLabel> label;
            if (labels)
                label = (*labels)[i];
            out << rule_record(rules[i], generic, label).dump() << '\n';
        }
        return;
    }
    out << "mode,antecedent,consequent,cf_x,cf_y,cf_xy,n";
    if (labels)
        out << ",label";
    const std::vector<Measure> measures =
        rules.empty() ? std::vector<Measure>{} : sorted_measures(rules.front().scores);
    for (Measure m : measures)
        out << ',' << to_string(m) << ',' << to_string(m) << "_display";
    out << '\n';
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const ScoredRule& r = rules[i];
        check_writable_names(r.rule.antecedent());
        check_writable_names(r.rule.consequent());
        out << mode_string(generic) << ',' << join_names(r.rule.antecedent())
            << ',' << join_names(r.rule.consequent()) << ',' << r.freq.cf_x()
            << ',' << r.freq.cf_y() << ',' << r.freq.cf_xy() << ','
            << r.freq.n();
        if (labels)
            out << ',' << to_string((*labels)[i]);
        for (Measure m : measures) {
            const double value = r.scores.at(m);
            out << ',' << full_precision(value) << ',' << display_score(value);
        }
        out << '\n';
    }
}

ItemSet side_from_names(const std::vector<std::string>& names, Namespace ns) {
    std::vector<Item> items;
    items.reserve(names.size());
    for (const std::string& name : names)
        items.emplace_back(ns, name);
    return ItemSet(std::move(items));
}

int json_int(const std::filesystem::path& path, std::size_t line,
             const json& rec, const char* field) {
    if (!rec.contains(field) || !rec.at(field).is_number_integer())
        fail(path, line, std::string("record needs an integer '") + field + "'");
    return rec.at(field).get<int>();
}

ScoredRule parse_rule_json(const std::filesystem::path& path,
                           std::size_t line, const std::string& text,
                           bool* generic_out) {
    json rec;
    try {
        rec = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(path, line, std::string("unparseable line: ") + e.what());
    }
    if (!rec.is_object())
        fail(path, line, "record must be a JSON object");
    if (!rec.contains("mode") || !rec.at("mode").is_string())
        fail(path, line, "record needs a string 'mode'");
    const bool generic =
        mode_from_string(path, line, rec.at("mode").get<std::string>());
    *generic_out = generic;
    try {
        const ItemSet antecedent = side_from_names(
            json_string_array(path, line, rec, "antecedent"),
            generic ? Namespace::Generic : Namespace::Issue);
        const ItemSet consequent = side_from_names(
            json_string_array(path, line, rec, "consequent"),
            generic ? Namespace::Generic : Namespace::Tech);
        RuleFrequencies freq(json_int(path, line, rec, "cf_x"),
                             json_int(path, line, rec, "cf_y"),
                             json_int(path, line, rec, "cf_xy"),
                             json_int(path, line, rec, "n"));
        if (!rec.contains("scores") || !rec.at("scores").is_object())
            fail(path, line, "record needs a 'scores' object");
        std::map<Measure, double> scores;
        for (const auto& [key, value] : rec.at("scores").items()) {
            if (!value.is_number())
                fail(path, line, "score '" + key + "' must be a number");
            scores[measure_from_string(key)] = value.get<double>();
        }
        return ScoredRule{Rule(antecedent, consequent), freq,
                          std::move(scores)};
    } catch (const Error& e) {
        const std::string what = e.what();
        if (what.rfind(path.string() + ":", 0) == 0)
            throw;
        fail(path, line, what);
    }
}

RuleFile read_rules_jsonl(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    RuleFile out;
    std::string text;
    std::size_t line = 0;
    bool first = true;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty())
            continue;
        bool generic = false;
        out.rules.push_back(parse_rule_json(path, line, text, &generic));
        if (first) {
            out.generic = generic;
            first = false;
        } else if (generic != out.generic) {
            fail(path, line, "file mixes generic and two-namespace records");
        }
    }
    return out;
}

double parse_double(const std::filesystem::path& path, std::size_t line,
                    const std::string& text) {
    const std::string trimmed = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(
        trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
        fail(path, line, "malformed number '" + trimmed + "'");
    return value;
}

int parse_int(const std::filesystem::path& path, std::size_t line,
              const std::string& text) {
    const std::string trimmed = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(
        trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size())
        fail(path, line, "malformed integer '" + trimmed + "'");
    return value;
}

RuleFile read_rules_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string text;
    if (!std::getline(in, text))
        throw DataError(path.string() + ": missing header line");
    std::vector<std::string> header = split(trim(text), kFieldSep);
    for (std::string& h : header)
        h = trim(h);
    const std::vector<std::string> base = {"mode", "antecedent", "consequent",
                                           "cf_x", "cf_y", "cf_xy", "n"};
    if (header.size() < base.size() ||
        !std::equal(base.begin(), base.end(), header.begin()))
        fail(path, 1, "unexpected rules header '" + trim(text) + "'");
    std::vector<Measure> measures;
    for (std::size_t i = base.size(); i < header.size(); i += 2) {
        if (i + 1 >= header.size() ||
            header[i + 1] != header[i] + "_display")
            fail(path, 1, "unexpected rules header '" + trim(text) + "'");
        try {
            measures.push_back(measure_from_string(header[i]));
        } catch (const Error& e) {
            fail(path, 1, e.what());
        }
    }

    RuleFile out;
    std::size_t line = 1;
    bool first = true;
    while (std::getline(in, text)) {
        ++line;
        if (trim(text).empty())
            continue;
        const std::vector<std::string> fields = split(text, kFieldSep);
        if (fields.size() != header.size())
            fail(path, line,
                 "expected " + std::to_string(header.size()) +
                     " fields, got " + std::to_string(fields.size()));
        const bool generic = mode_from_string(path, line, trim(fields[0]));
        if (first) {
            out.generic = generic;
            first = false;
        } else if (generic != out.generic) {
            fail(path, line, "file mixes generic and two-namespace records");
        }
        try {
            const ItemSet antecedent = side_from_names(
                parse_item_cell(fields[1]),
                generic ? Namespace::Generic : Namespace::Issue);
            const ItemSet consequent = side_from_names(
                parse_item_cell(fields[2]),
                generic ? Namespace::Generic : Namespace::Tech);
            RuleFrequencies freq(parse_int(path, line, fields[3]),
                                 parse_int(path, line, fields[4]),
                                 parse_int(path, line, fields[5]),
                                 parse_int(path, line, fields[6]));
            std::map<Measure, double> scores;
            for (std::size_t i = 0; i < measures.size(); ++i)
                scores[measures[i]] =
                    parse_double(path, line, fields[base.size() + 2 * i]);
            out.rules.push_back(ScoredRule{Rule(antecedent, consequent), freq,
                                           std::move(scores)});
        } catch (const Error& e) {
            const std::string what = e.what();
            if (what.rfind(path.string() + ":", 0) == 0)
                throw;
            fail(path, line, what);
        }
    }
    return out;
}

} // namespace

FileFormat format_from_string(std::string_view s) {
    if (s == "jsonl")
        return FileFormat::Jsonl;
    if (s == "csv")
        return FileFormat::Csv;
    throw UsageError("unknown format '" + std::string(s) + "'");
}

std::string_view to_string(FileFormat format) {
    return format == FileFormat::Jsonl ? "jsonl" : "csv";
}

FileFormat infer_format(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".jsonl" || ext == ".json")
        return FileFormat::Jsonl;
    if (ext == ".csv")
        return FileFormat::Csv;
    throw UsageError("cannot infer format of '" + path.string() +
                     "'; use an explicit format option");
}

TransactionDatabase load_dataset(const std::filesystem::path& path,
                                 FileFormat format, LoadReport* report) {
    return format == FileFormat::Jsonl ? load_jsonl_dataset(path, report)
                                       : load_csv_dataset(path, report);
}

void write_rules(const std::vector<ScoredRule>& rules, std::ostream& out,
                 FileFormat format) {
    write_rule_rows(rules, nullptr, out, format);
}

void write_rules(const std::vector<ScoredRule>& rules,
                 const std::filesystem::path& path, FileFormat format) {
    std::ofstream out = open_output(path);
    write_rule_rows(rules, nullptr, out, format);
}

RuleFile read_rules(const std::filesystem::path& path, FileFormat format) {
    return format == FileFormat::Jsonl ? read_rules_jsonl(path)
                                       : read_rules_csv(path);
}

void write_comparison(const std::vector<LabeledRule>& rules, std::ostream& out,
                      FileFormat format) {
    std::vector<ScoredRule> plain;
    std::vector<ListLabel> labels;
    plain.reserve(rules.size());
    labels.reserve(rules.size());
    for (const LabeledRule& r : rules) {
        plain.push_back(r.rule);
        labels.push_back(r.label);
    }
    write_rule_rows(plain, &labels, out, format);
}

void write_comparison(const std::vector<LabeledRule>& rules,
                      const std::filesystem::path& path, FileFormat format) {
    std::ofstream out = open_output(path);
    write_comparison(rules, out, format);
}

std::string full_precision(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{})
        throw UsageError("cannot format number");
    return std::string(buf, ptr);
}

std::string display_score(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", value);
    return std::string(buf);
}

} // namespace wccmine
