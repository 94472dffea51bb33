#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wccmine/ranking.hpp"
#include "wccmine/rule.hpp"
#include "wccmine/transaction.hpp"

namespace wccmine {

enum class FileFormat { Jsonl, Csv };

FileFormat format_from_string(std::string_view s);
std::string_view to_string(FileFormat format);

// Infers the format from the file extension: .jsonl and .json are JSONL,
// .csv is CSV. Anything else is an error.
FileFormat infer_format(const std::filesystem::path& path);

struct LoadReport {
    std::vector<std::string> warnings;
};

// Loads a transaction database. Two-namespace records carry "issues" and
// "techs" item lists; generic records carry a single "items" list. A file
// must stay in one mode throughout. Duplicate items within a list are
// collapsed with a warning; duplicate record ids, unparseable lines and
// reserved separator characters inside item names are errors.
TransactionDatabase load_dataset(const std::filesystem::path& path,
                                 FileFormat format,
                                 LoadReport* report = nullptr);

struct RuleFile {
    std::vector<ScoredRule> rules;
    bool generic = false;
};

// Writes scored rules with their frequencies, each score in full precision
// next to its 3-decimal display form. Row order is preserved, so writing a
// ranked list keeps its ranking. Reading back restores the full-precision
// scores bit for bit.
void write_rules(const std::vector<ScoredRule>& rules, std::ostream& out,
                 FileFormat format);
void write_rules(const std::vector<ScoredRule>& rules,
                 const std::filesystem::path& path, FileFormat format);
RuleFile read_rules(const std::filesystem::path& path, FileFormat format);

// Same record shape as write_rules plus a membership label per rule.
void write_comparison(const std::vector<LabeledRule>& rules, std::ostream& out,
                      FileFormat format);
void write_comparison(const std::vector<LabeledRule>& rules,
                      const std::filesystem::path& path, FileFormat format);

// Shortest decimal form that parses back to exactly the same double.
std::string full_precision(double value);
// Fixed 3-decimal display form.
std::string display_score(double value);

} // namespace wccmine
