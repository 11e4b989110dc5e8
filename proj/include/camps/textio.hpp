#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "camps/mps.hpp"
#include "camps/pauli.hpp"
#include "camps/solver.hpp"

namespace camps {

// One number, 12 significant digits, deterministic. Every numeric field in
// the text formats below goes through this, so a rerun with identical inputs
// reproduces its output files byte for byte.
std::string format_number(double v);

// FNV-1a over raw bytes. Output files carry fnv1a64 of the producing
// configuration in their header line; see spec_hash_line.
uint64_t fnv1a64(std::string_view bytes);

// "# spec=<16 hex digits>\n"
std::string spec_hash_line(uint64_t hash);

// Pauli-sum text, one term per line: "<coeff> <letters>" with letters over
// {I,X,Y,Z}, e.g. "-1 ZZI". Readers skip blank lines and '#' comments, so
// files may carry header lines. Parse failures throw FormatError with the
// 1-based line number.
std::string pauli_sum_to_text(const PauliSum& h);
PauliSum pauli_sum_from_text(const std::string& text);

// Circuit-log lines:
//   sweep=<k> bond=<j> gate=<tableau encoding> S_before=<v> S_after=<v>
// one entry per line, in gate application order. Readers skip blanks and
// '#' lines. Text-level round trip is exact: to_text(from_text(t)) == t for
// any t this writer produced.
std::string circuit_log_to_text(const CircuitLog& log);
CircuitLog circuit_log_from_text(const std::string& text);

// Column table. Serialized as TAB-separated rows; the last '#' line before
// the data holds the TAB-separated column names. Earlier '#' lines are
// free-form metadata and are preserved in `meta` (without the '# ' prefix).
struct TextTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;  // each row has columns.size() entries
    std::vector<std::string> meta;
};
std::string table_to_text(const TextTable& t);
TextTable table_from_text(const std::string& text);

// Key-value summary: "key = value" lines, insertion order kept. Values are
// already-formatted strings (use format_number for numerics).
std::string summary_to_text(const std::vector<std::pair<std::string, std::string>>& kv);

// Flat sectioned key-value text:
//   [solver]
//   n_sweeps = 40      # comment
// Keys are addressed as "section.key", or bare "key" before any section
// header. A '#' at line start or after whitespace begins a comment.
// Duplicate keys and malformed lines throw FormatError with the line number.
class ConfigMap {
  public:
    bool has(const std::string& key) const;
    // Missing keys and unparsable values throw FormatError naming the key
    // (and its line, for value errors).
    const std::string& get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    long get_long(const std::string& key) const;
    long get_long_or(const std::string& key, long fallback) const;
    double get_double(const std::string& key) const;
    double get_double_or(const std::string& key, double fallback) const;
    // Comma- or space-separated integer list, at least one entry.
    std::vector<long> get_long_list(const std::string& key) const;
    // Keys in file order.
    std::vector<std::string> keys() const;
    long line_of(const std::string& key) const;  // 0 when absent

  private:
    friend ConfigMap parse_config(const std::string& text);
    struct Entry {
        std::string key;
        std::string value;
        long line = 0;
    };
    const Entry* find(const std::string& key) const;
    std::vector<Entry> entries_;
};
ConfigMap parse_config(const std::string& text);

// MPS checkpoint, versioned binary container: magic, version, global shape,
// then per-site bond dimensions and raw tensor buffers. Round trip is exact
// to the bit. load_mps validates shapes (boundary bonds 1, adjacent bonds
// chained, center in range) and throws FormatError on any violation;
// unopenable paths throw ArgumentError.
void save_mps(const MpsState& mps, const std::string& path);
MpsState load_mps(const std::string& path);

// Whole-file helpers used by the CLI and tests.
std::string read_text_file(const std::string& path);           // ArgumentError if unreadable
void write_text_file(const std::string& path, std::string_view content);

}  // namespace camps
