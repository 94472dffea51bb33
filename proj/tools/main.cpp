// Command-line front end: mine, score, rank, compare and explain
// association rules between survey item namespaces.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wccmine/beta_stats.hpp"
#include "wccmine/enumeration.hpp"
#include "wccmine/errors.hpp"
#include "wccmine/io.hpp"
#include "wccmine/measures.hpp"
#include "wccmine/ranking.hpp"

namespace {

using namespace wccmine;

FileFormat resolve_format(const std::string& choice,
                          const std::filesystem::path& path) {
    if (choice == "auto")
        return infer_format(path);
    return format_from_string(choice);
}

std::vector<Measure> parse_measures(const std::vector<std::string>& names) {
    std::vector<Measure> out;
    for (const std::string& name : names) {
        const Measure m = measure_from_string(name);
        if (std::find(out.begin(), out.end(), m) == out.end())
            out.push_back(m);
    }
    if (out.empty())
        throw UsageError("no measures requested");
    return out;
}

std::string set_display(const ItemSet& s) {
    std::string out = "{";
    for (const Item& item : s) {
        if (out.size() > 1)
            out += ", ";
        out += item.name();
    }
    out += "}";
    return out;
}

std::string rule_display(const Rule& r) {
    return set_display(r.antecedent()) + " => " + set_display(r.consequent());
}

ItemSet parse_side(const std::string& text, Namespace ns) {
    std::vector<Item> items;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(';', start);
        const std::string piece =
            text.substr(start, pos == std::string::npos ? pos : pos - start);
        items.emplace_back(ns, piece);
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return ItemSet(std::move(items));
}

void print_warnings(const LoadReport& report) {
    for (const std::string& w : report.warnings)
        std::cerr << "warning: " << w << '\n';
}

// With no output path the rules stream to stdout and the summary moves to
// stderr, so piped output stays clean.
void emit_rules(const std::vector<ScoredRule>& rules,
                const std::string& out_path, const std::string& out_format) {
    if (out_path.empty()) {
        const FileFormat format = out_format == "auto"
                                      ? FileFormat::Jsonl
                                      : format_from_string(out_format);
        write_rules(rules, std::cout, format);
    } else {
        write_rules(rules, out_path, resolve_format(out_format, out_path));
    }
}

std::ostream& summary_stream(const std::string& out_path) {
    return out_path.empty() ? std::cerr : std::cout;
}

struct MineArgs {
    std::string input;
    std::string output;
    std::string input_format = "auto";
    std::string output_format = "auto";
    std::vector<std::string> measures = {"conf", "conf_lower", "casual_conf",
                                         "wcc"};
    double alpha = 0.01;
    double weight = 1.6;
    int min_antecedent_count = 2;
    int min_cooccurrence = 0;
    std::optional<int> max_antecedent_size;
    std::optional<int> max_consequent_size;
    std::optional<std::uint64_t> pair_budget;
    int threads = 1;
};

void run_mine(const MineArgs& args) {
    LoadReport report;
    const TransactionDatabase db = load_dataset(
        args.input, resolve_format(args.input_format, args.input), &report);
    print_warnings(report);

    MiningConfig mining;
    mining.min_antecedent_count = args.min_antecedent_count;
    mining.min_cooccurrence = args.min_cooccurrence;
    mining.max_antecedent_size = args.max_antecedent_size;
    mining.max_consequent_size = args.max_consequent_size;
    mining.pair_budget = args.pair_budget;
    const MeasureConfig cfg{args.alpha, args.weight};
    cfg.validate();

    const auto start = std::chrono::steady_clock::now();
    const FrequencyTable table = count_frequencies(db, mining, args.threads);
    const std::vector<RuleCounts> counts = generate_rules(table);
    const std::vector<ScoredRule> scored =
        score_rules(counts, db.n(), cfg, parse_measures(args.measures));
    const auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);

    emit_rules(scored, args.output, args.output_format);
    std::ostream& info = summary_stream(args.output);
    info << "transactions: " << db.n() << '\n';
    info << "rules: " << scored.size() << '\n';
    std::cerr << "elapsed_ms: " << elapsed.count() << '\n';
}

struct ScoreArgs {
    std::string input;
    std::string output;
    std::string input_format = "auto";
    std::string output_format = "auto";
    std::vector<std::string> measures = {"conf", "conf_lower", "casual_conf",
                                         "wcc"};
    double alpha = 0.01;
    double weight = 1.6;
};

void run_score(const ScoreArgs& args) {
    const RuleFile file =
        read_rules(args.input, resolve_format(args.input_format, args.input));
    const MeasureConfig cfg{args.alpha, args.weight};
    cfg.validate();
    const std::vector<Measure> measures = parse_measures(args.measures);
    std::vector<ScoredRule> out;
    out.reserve(file.rules.size());
    for (const ScoredRule& r : file.rules) {
        std::map<Measure, double> scores;
        for (Measure m : measures)
            scores[m] = score(m, r.freq, cfg);
        out.push_back(ScoredRule{r.rule, r.freq, std::move(scores)});
    }
    emit_rules(out, args.output, args.output_format);
    summary_stream(args.output) << "rules: " << out.size() << '\n';
}

struct RankArgs {
    std::string input;
    std::string output;
    std::string input_format = "auto";
    std::string output_format = "auto";
    std::string measure = "wcc";
    int k = 30;
};

void run_rank(const RankArgs& args) {
    const RuleFile file =
        read_rules(args.input, resolve_format(args.input_format, args.input));
    const RankedList ranked =
        top_k(file.rules, measure_from_string(args.measure), args.k);
    emit_rules(ranked.entries, args.output, args.output_format);
    summary_stream(args.output) << "kept: " << ranked.entries.size() << " of "
                                << file.rules.size() << '\n';
}

struct CompareArgs {
    std::string list_a;
    std::string list_b;
    std::string output;
    std::string input_format = "auto";
    std::string output_format = "auto";
    std::optional<std::uint64_t> sample_seed;
};

void run_compare(const CompareArgs& args) {
    const RuleFile file_a = read_rules(
        args.list_a, resolve_format(args.input_format, args.list_a));
    const RuleFile file_b = read_rules(
        args.list_b, resolve_format(args.input_format, args.list_b));
    // The stored row order is the ranking; the measure tag is not needed
    // for membership comparison.
    const RankedList a{Measure::Conf, file_a.rules};
    const RankedList b{Measure::Conf, file_b.rules};
    const ComparisonResult result = compare_lists(a, b);

    std::size_t only_a = 0;
    std::size_t only_b = 0;
    for (const LabeledRule& r : result.rules) {
        only_a += r.label == ListLabel::OnlyA;
        only_b += r.label == ListLabel::OnlyB;
    }
    std::cout << "list_a: " << file_a.rules.size() << '\n';
    std::cout << "list_b: " << file_b.rules.size() << '\n';
    std::cout << "both: " << result.intersection_size << '\n';
    std::cout << "only_a: " << only_a << '\n';
    std::cout << "only_b: " << only_b << '\n';
    std::cout << "union: " << result.union_size << '\n';

    if (!args.output.empty())
        write_comparison(result.rules, args.output,
                         resolve_format(args.output_format, args.output));

    if (args.sample_seed) {
        const auto [first, second] =
            sample_rule_pair(result.rules, *args.sample_seed);
        std::cout << "sample_1: " << rule_display(first.rule.rule) << " ["
                  << to_string(first.label) << "]\n";
        std::cout << "sample_2: " << rule_display(second.rule.rule) << " ["
                  << to_string(second.label) << "]\n";
    }
}

struct ExplainArgs {
    std::string input;
    std::string input_format = "auto";
    std::string antecedent;
    std::string consequent;
    double alpha = 0.01;
    double weight = 1.6;
};

void run_explain(const ExplainArgs& args) {
    LoadReport report;
    const TransactionDatabase db = load_dataset(
        args.input, resolve_format(args.input_format, args.input), &report);
    print_warnings(report);
    if (db.empty())
        throw DataError("empty database");

    const Namespace ant_ns =
        db.generic() ? Namespace::Generic : Namespace::Issue;
    const Namespace cons_ns =
        db.generic() ? Namespace::Generic : Namespace::Tech;
    const ItemSet x = parse_side(args.antecedent, ant_ns);
    const ItemSet y = parse_side(args.consequent, cons_ns);

    ItemSet ant_vocab;
    ItemSet cons_vocab;
    for (const Transaction& t : db.transactions()) {
        ant_vocab = ant_vocab.united_with(t.antecedent_side());
        cons_vocab = cons_vocab.united_with(t.consequent_side());
    }
    for (const Item& item : x)
        if (!ant_vocab.contains(item))
            throw DataError("unknown item '" + item.name() + "'");
    for (const Item& item : y)
        if (!cons_vocab.contains(item))
            throw DataError("unknown item '" + item.name() + "'");

    const Rule rule(x, y);
    int cf_x = 0;
    int cf_y = 0;
    int cf_xy = 0;
    for (const Transaction& t : db.transactions()) {
        const bool has_x = t.antecedent_side().contains_all(x);
        const bool has_y = t.consequent_side().contains_all(y);
        cf_x += has_x;
        cf_y += has_y;
        cf_xy += has_x && has_y;
    }
    const RuleFrequencies freq(cf_x, cf_y, cf_xy, static_cast<int>(db.n()));
    const MeasureConfig cfg{args.alpha, args.weight};
    cfg.validate();

    const double positive =
        lower_credible_bound({freq.cf_xy(), freq.cf_x(), cfg.alpha});
    const double negative = lower_credible_bound(
        {freq.cf_not_x_not_y(), freq.cf_not_x(), cfg.alpha});

    const auto line = [](const char* name, double value) {
        std::cout << name << ": " << display_score(value) << " ("
                  << full_precision(value) << ")\n";
    };
    std::cout << "rule: " << rule_display(rule) << '\n';
    std::cout << "mode: " << (db.generic() ? "generic" : "two_namespace")
              << '\n';
    std::cout << "n: " << freq.n() << '\n';
    std::cout << "cf(X): " << freq.cf_x() << '\n';
    std::cout << "cf(Y): " << freq.cf_y() << '\n';
    std::cout << "cf(X u Y): " << freq.cf_xy() << '\n';
    std::cout << "cf(not-X): " << freq.cf_not_x() << '\n';
    std::cout << "cf(not-X u not-Y): " << freq.cf_not_x_not_y() << '\n';
    std::cout << "alpha: " << full_precision(cfg.alpha) << '\n';
    std::cout << "w: " << full_precision(cfg.w) << '\n';
    line("P(Y|X) lower bound", positive);
    line("P(not-Y|not-X) lower bound", negative);
    line("conf", conf(freq));
    line("conf_lower", conf_lower(freq, cfg));
    line("casual_conf", casual_conf(freq, cfg));
    line("wcc", wcc(freq, cfg));
}

void add_format_options(CLI::App* cmd, std::string& input_format,
                        std::string& output_format) {
    cmd->add_option("--input-format", input_format,
                    "input format: jsonl, csv or auto")
        ->check(CLI::IsMember({"auto", "jsonl", "csv"}));
    cmd->add_option("--output-format", output_format,
                    "output format: jsonl, csv or auto")
        ->check(CLI::IsMember({"auto", "jsonl", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Association rule mining between survey item namespaces"};
    app.require_subcommand(1);

    MineArgs mine_args;
    CLI::App* mine = app.add_subcommand(
        "mine", "Mine and score rules from a transaction database");
    mine->add_option("-i,--input", mine_args.input, "transaction database")
        ->required();
    mine->add_option("-o,--output", mine_args.output,
                     "rules file to write (default: stdout)");
    add_format_options(mine, mine_args.input_format, mine_args.output_format);
    mine->add_option("--measures", mine_args.measures,
                     "measures to score (comma separated)")
        ->delimiter(',');
    mine->add_option("--alpha", mine_args.alpha,
                     "credibility level of the conservative bound");
    mine->add_option("-w,--weight", mine_args.weight,
                     "antecedent weight of wcc");
    mine->add_option("--min-antecedent-count", mine_args.min_antecedent_count,
                     "minimum cf(X) for emitted antecedents");
    mine->add_option("--min-cooccurrence", mine_args.min_cooccurrence,
                     "minimum cf(X u Y) for emitted rules");
    mine->add_option("--max-antecedent-size", mine_args.max_antecedent_size,
                     "largest antecedent itemset considered");
    mine->add_option("--max-consequent-size", mine_args.max_consequent_size,
                     "largest consequent itemset considered");
    mine->add_option("--pair-budget", mine_args.pair_budget,
                     "cap on total enumeration work");
    mine->add_option("--threads", mine_args.threads,
                     "worker threads for counting");
    mine->callback([&] { run_mine(mine_args); });

    ScoreArgs score_args;
    CLI::App* score = app.add_subcommand(
        "score", "Recompute scores for an existing rules file");
    score->add_option("-i,--input", score_args.input, "rules file")
        ->required();
    score->add_option("-o,--output", score_args.output,
                      "rules file to write (default: stdout)");
    add_format_options(score, score_args.input_format,
                       score_args.output_format);
    score->add_option("--measures", score_args.measures,
                      "measures to score (comma separated)")
        ->delimiter(',');
    score->add_option("--alpha", score_args.alpha,
                      "credibility level of the conservative bound");
    score->add_option("-w,--weight", score_args.weight,
                      "antecedent weight of wcc");
    score->callback([&] { run_score(score_args); });

    RankArgs rank_args;
    CLI::App* rank =
        app.add_subcommand("rank", "Keep the top k rules under one measure");
    rank->add_option("-i,--input", rank_args.input, "rules file")->required();
    rank->add_option("-o,--output", rank_args.output,
                     "rules file to write (default: stdout)");
    add_format_options(rank, rank_args.input_format, rank_args.output_format);
    rank->add_option("-m,--measure", rank_args.measure, "ranking measure");
    rank->add_option("-k", rank_args.k, "list length");
    rank->callback([&] { run_rank(rank_args); });

    CompareArgs compare_args;
    CLI::App* compare = app.add_subcommand(
        "compare", "Label the union of two ranked rule lists");
    compare->add_option("-a,--list-a", compare_args.list_a, "first list")
        ->required();
    compare->add_option("-b,--list-b", compare_args.list_b, "second list")
        ->required();
    compare->add_option("-o,--output", compare_args.output,
                        "labeled union file to write");
    add_format_options(compare, compare_args.input_format,
                       compare_args.output_format);
    compare->add_option("--sample-seed", compare_args.sample_seed,
                        "print one random differing-label pair");
    compare->callback([&] { run_compare(compare_args); });

    ExplainArgs explain_args;
    CLI::App* explain = app.add_subcommand(
        "explain", "Show the full calculation for one rule");
    explain->add_option("-i,--input", explain_args.input,
                        "transaction database")
        ->required();
    explain->add_option("--input-format", explain_args.input_format,
                        "input format: jsonl, csv or auto")
        ->check(CLI::IsMember({"auto", "jsonl", "csv"}));
    explain->add_option("--antecedent", explain_args.antecedent,
                        "antecedent items (semicolon separated)")
        ->required();
    explain->add_option("--consequent", explain_args.consequent,
                        "consequent items (semicolon separated)")
        ->required();
    explain->add_option("--alpha", explain_args.alpha,
                        "credibility level of the conservative bound");
    explain->add_option("-w,--weight", explain_args.weight,
                        "antecedent weight of wcc");
    explain->callback([&] { run_explain(explain_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 1;
    } catch (const BudgetExceededError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
