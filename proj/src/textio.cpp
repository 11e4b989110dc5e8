#include "camps/textio.hpp"

#include <charconv>
#include <optional>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "camps/errors.hpp"

namespace camps {

namespace {

std::string_view trim(std::string_view s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string_view::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// A '#' opens a comment at line start or after whitespace; this keeps '#'
// available inside values should a format ever need it.
std::string_view strip_comment(std::string_view s) {
    for (size_t i = 0; i < s.size(); ++i)
        if (s[i] == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t'))
            return s.substr(0, i);
    return s;
}

// Splits into lines without their terminators; a trailing newline does not
// produce an empty final line.
std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            if (pos < text.size()) lines.push_back(text.substr(pos));
            break;
        }
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return lines;
}

double parse_double(std::string_view tok, long line, const std::string& what) {
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError(what + ": expected a number, got '" + std::string(tok) + "'", line);
    return v;
}

long parse_long(std::string_view tok, long line, const std::string& what) {
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw FormatError(what + ": expected an integer, got '" + std::string(tok) + "'", line);
    return v;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string spec_hash_line(uint64_t hash) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "# spec=%016llx\n", static_cast<unsigned long long>(hash));
    return buf;
}

std::string pauli_sum_to_text(const PauliSum& h) {
    std::string out;
    for (const auto& t : h.terms()) {
        out += format_number(t.coeff);
        out += ' ';
        out += t.str.letters();
        out += '\n';
    }
    return out;
}

PauliSum pauli_sum_from_text(const std::string& text) {
    auto lines = split_lines(text);
    std::optional<PauliSum> h;
    long n = -1;
    for (size_t i = 0; i < lines.size(); ++i) {
        const long lineno = long(i) + 1;
        std::string_view body = trim(strip_comment(lines[i]));
        if (body.empty()) continue;
        auto toks = split_ws(body);
        if (toks.size() != 2)
            throw FormatError("expected '<coeff> <letters>'", lineno);
        double coeff = parse_double(toks[0], lineno, "coefficient");
        std::string_view letters = toks[1];
        for (char c : letters)
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                throw FormatError(std::string("invalid Pauli letter '") + c + "'", lineno);
        if (n < 0) {
            n = long(letters.size());
            if (n == 0) throw FormatError("empty letter string", lineno);
            h.emplace(n);
        } else if (long(letters.size()) != n) {
            throw FormatError("letter string length " + std::to_string(letters.size()) +
                                  " does not match earlier length " + std::to_string(n),
                              lineno);
        }
        PauliString s(n);
        for (long j = 0; j < n; ++j) s.set(j, pauli_from_char(letters[j]));
        h->add(coeff, s);
    }
    if (!h) throw FormatError("no terms");
    return *h;
}

std::string circuit_log_to_text(const CircuitLog& log) {
    std::string out;
    for (const auto& e : log) {
        out += "sweep=" + std::to_string(e.sweep);
        out += " bond=" + std::to_string(e.bond);
        out += " gate=" + e.gate.encode();
        out += " S_before=" + format_number(e.entropy_before);
        out += " S_after=" + format_number(e.entropy_after);
        out += '\n';
    }
    return out;
}

CircuitLog circuit_log_from_text(const std::string& text) {
    CircuitLog log;
    auto lines = split_lines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
        const long lineno = long(i) + 1;
        std::string_view body = trim(strip_comment(lines[i]));
        if (body.empty()) continue;
        auto toks = split_ws(body);
        if (toks.size() != 5)
            throw FormatError("expected 5 fields 'sweep= bond= gate= S_before= S_after='",
                              lineno);
        const char* names[5] = {"sweep=", "bond=", "gate=", "S_before=", "S_after="};
        std::string_view vals[5];
        for (int k = 0; k < 5; ++k) {
            std::string_view name(names[k]);
            if (toks[k].substr(0, name.size()) != name)
                throw FormatError("field " + std::to_string(k + 1) + " must start with '" +
                                      names[k] + "'",
                                  lineno);
            vals[k] = toks[k].substr(name.size());
        }
        CircuitEntry e;
        e.sweep = parse_long(vals[0], lineno, "sweep");
        e.bond = parse_long(vals[1], lineno, "bond");
        if (e.sweep < 1) throw FormatError("sweep must be >= 1", lineno);
        if (e.bond < 0) throw FormatError("bond must be >= 0", lineno);
        try {
            e.gate = CliffordTableau::decode(std::string(vals[2]));
        } catch (const Error& err) {
            throw FormatError(std::string("gate: ") + err.what(), lineno);
        }
        e.entropy_before = parse_double(vals[3], lineno, "S_before");
        e.entropy_after = parse_double(vals[4], lineno, "S_after");
        log.push_back(std::move(e));
    }
    return log;
}

std::string table_to_text(const TextTable& t) {
    if (t.columns.empty()) throw ArgumentError("table needs at least one column");
    for (const auto& c : t.columns)
        if (c.empty() || c.find('\t') != std::string::npos || c.find('\n') != std::string::npos)
            throw ArgumentError("column name must be nonempty and TAB-free");
    std::string out;
    for (const auto& m : t.meta) {
        if (m.find('\n') != std::string::npos) throw ArgumentError("meta line contains newline");
        out += "# " + m + "\n";
    }
    out += "#";
    for (size_t c = 0; c < t.columns.size(); ++c) {
        out += c == 0 ? " " : "\t";
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw ArgumentError("row arity does not match column count");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += '\t';
            out += format_number(row[c]);
        }
        out += '\n';
    }
    return out;
}

TextTable table_from_text(const std::string& text) {
    TextTable t;
    auto lines = split_lines(text);
    std::vector<std::pair<long, std::string>> headers;  // line, content after '#'
    bool data_started = false;

    auto split_tabs = [](std::string_view sv) {
        std::vector<std::string_view> out;
        size_t pos = 0;
        while (true) {
            size_t tab = sv.find('\t', pos);
            out.push_back(sv.substr(pos, tab == std::string_view::npos ? tab : tab - pos));
            if (tab == std::string_view::npos) return out;
            pos = tab + 1;
        }
    };
    auto adopt_columns = [&] {
        if (headers.empty()) throw FormatError("missing '#' column header");
        // The last header line carries the column names; earlier ones are meta.
        for (std::string_view name : split_tabs(headers.back().second)) {
            if (trim(name).empty()) throw FormatError("empty column name", headers.back().first);
            t.columns.emplace_back(trim(name));
        }
        for (size_t k = 0; k + 1 < headers.size(); ++k) t.meta.push_back(headers[k].second);
    };

    for (size_t i = 0; i < lines.size(); ++i) {
        const long lineno = long(i) + 1;
        std::string_view body = trim(lines[i]);
        if (body.empty()) continue;
        if (body[0] == '#') {
            if (data_started) throw FormatError("comment after data rows", lineno);
            std::string_view content = body.substr(1);
            if (!content.empty() && content[0] == ' ') content = content.substr(1);
            headers.emplace_back(lineno, std::string(content));
            continue;
        }
        if (!data_started) {
            adopt_columns();
            data_started = true;
        }
        std::vector<double> row;
        for (std::string_view tok : split_tabs(body))
            row.push_back(parse_double(trim(tok), lineno, "cell"));
        if (row.size() != t.columns.size())
            throw FormatError("row has " + std::to_string(row.size()) + " cells, expected " +
                                  std::to_string(t.columns.size()),
                              lineno);
        t.rows.push_back(std::move(row));
    }
    if (!data_started) adopt_columns();  // header-only table
    return t;
}

std::string summary_to_text(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (k.empty() || k.find_first_of(" \t\n=#[") != std::string::npos)
            throw ArgumentError("bad summary key '" + k + "'");
        if (v.find('\n') != std::string::npos || v.find('#') != std::string::npos)
            throw ArgumentError("summary value for '" + k + "' contains newline or '#'");
        out += k + " = " + v + "\n";
    }
    return out;
}

const ConfigMap::Entry* ConfigMap::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

bool ConfigMap::has(const std::string& key) const { return find(key) != nullptr; }

const std::string& ConfigMap::get(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw FormatError("missing key '" + key + "'");
    return e->value;
}

std::string ConfigMap::get_or(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e ? e->value : fallback;
}

long ConfigMap::get_long(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw FormatError("missing key '" + key + "'");
    return parse_long(e->value, e->line, "key '" + key + "'");
}

long ConfigMap::get_long_or(const std::string& key, long fallback) const {
    return has(key) ? get_long(key) : fallback;
}

double ConfigMap::get_double(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw FormatError("missing key '" + key + "'");
    return parse_double(e->value, e->line, "key '" + key + "'");
}

double ConfigMap::get_double_or(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

std::vector<long> ConfigMap::get_long_list(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) throw FormatError("missing key '" + key + "'");
    std::string spaced = e->value;
    for (char& c : spaced)
        if (c == ',') c = ' ';
    std::vector<long> out;
    for (std::string_view tok : split_ws(spaced))
        out.push_back(parse_long(tok, e->line, "key '" + key + "'"));
    if (out.empty()) throw FormatError("key '" + key + "': empty list", e->line);
    return out;
}

std::vector<std::string> ConfigMap::keys() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.key);
    return out;
}

long ConfigMap::line_of(const std::string& key) const {
    const Entry* e = find(key);
    return e ? e->line : 0;
}

ConfigMap parse_config(const std::string& text) {
    ConfigMap cfg;
    std::string section;
    auto lines = split_lines(text);
    for (size_t i = 0; i < lines.size(); ++i) {
        const long lineno = long(i) + 1;
        std::string_view body = trim(strip_comment(lines[i]));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw FormatError("section header must end with ']'", lineno);
            std::string_view name = trim(body.substr(1, body.size() - 2));
            if (name.empty() || name.find_first_of("[]=") != std::string_view::npos)
                throw FormatError("bad section name", lineno);
            section = std::string(name);
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw FormatError("expected 'key = value' or '[section]'", lineno);
        std::string_view key = trim(body.substr(0, eq));
        std::string_view value = trim(body.substr(eq + 1));
        if (key.empty() || key.find_first_of(" \t[]") != std::string_view::npos)
            throw FormatError("bad key", lineno);
        if (value.empty()) throw FormatError("empty value for key '" + std::string(key) + "'",
                                             lineno);
        std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
        if (cfg.find(full)) throw FormatError("duplicate key '" + full + "'", lineno);
        cfg.entries_.push_back({std::move(full), std::string(value), lineno});
    }
    return cfg;
}

namespace {

constexpr char kMpsMagic[8] = {'C', 'A', 'M', 'P', 'S', 'M', 'P', 'S'};
constexpr uint32_t kMpsVersion = 1;

// The container is raw little-endian scalars; this library only targets
// little-endian hosts (as does the checked-in build configuration).
void put_bytes(std::ofstream& f, const void* p, size_t n) {
    f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

void get_bytes(std::ifstream& f, void* p, size_t n) {
    f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(f.gcount()) != n) throw FormatError("truncated checkpoint");
}

}  // namespace

void save_mps(const MpsState& mps, const std::string& path) {
    if (mps.n_sites < 1 || long(mps.tensors.size()) != mps.n_sites)
        throw ArgumentError("checkpoint: state has no consistent site list");
    for (const auto& t : mps.tensors)
        if (t.m.rows() != 2 * t.dl || t.m.cols() != t.dr)
            throw ArgumentError("checkpoint: tensor buffer does not match its bond dims");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ArgumentError("cannot open for writing: " + path);
    put_bytes(f, kMpsMagic, sizeof kMpsMagic);
    put_bytes(f, &kMpsVersion, sizeof kMpsVersion);
    int64_t shape[3] = {mps.n_sites, mps.max_bond, mps.center};
    put_bytes(f, shape, sizeof shape);
    for (const auto& t : mps.tensors) {
        int64_t dims[2] = {t.dl, t.dr};
        put_bytes(f, dims, sizeof dims);
        put_bytes(f, t.m.data(), sizeof(cplx) * size_t(t.m.size()));
    }
    f.flush();
    if (!f.good()) throw Error("checkpoint write failed: " + path);
}

MpsState load_mps(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open: " + path);
    char magic[8];
    get_bytes(f, magic, sizeof magic);
    if (std::string_view(magic, 8) != std::string_view(kMpsMagic, 8))
        throw FormatError("not an MPS checkpoint (bad magic)");
    uint32_t version = 0;
    get_bytes(f, &version, sizeof version);
    if (version != kMpsVersion)
        throw FormatError("unsupported checkpoint version " + std::to_string(version));
    int64_t shape[3];
    get_bytes(f, shape, sizeof shape);
    MpsState mps;
    mps.n_sites = long(shape[0]);
    mps.max_bond = long(shape[1]);
    mps.center = long(shape[2]);
    if (mps.n_sites < 1 || mps.n_sites > 100000)
        throw FormatError("implausible site count " + std::to_string(mps.n_sites));
    if (mps.center < -1 || mps.center >= mps.n_sites)
        throw FormatError("center out of range");
    mps.tensors.resize(size_t(mps.n_sites));
    for (long k = 0; k < mps.n_sites; ++k) {
        int64_t dims[2];
        get_bytes(f, dims, sizeof dims);
        auto& t = mps.tensors[size_t(k)];
        t.dl = long(dims[0]);
        t.dr = long(dims[1]);
        if (t.dl < 1 || t.dr < 1 || t.dl > (1 << 20) || t.dr > (1 << 20))
            throw FormatError("implausible bond dimension at site " + std::to_string(k));
        if (k == 0 && t.dl != 1) throw FormatError("left boundary bond must be 1");
        if (k == mps.n_sites - 1 && t.dr != 1) throw FormatError("right boundary bond must be 1");
        if (k > 0 && t.dl != mps.tensors[size_t(k - 1)].dr)
            throw FormatError("bond mismatch between sites " + std::to_string(k - 1) + " and " +
                              std::to_string(k));
        t.m.resize(2 * t.dl, t.dr);
        get_bytes(f, t.m.data(), sizeof(cplx) * size_t(t.m.size()));
    }
    char extra;
    f.read(&extra, 1);
    if (f.gcount() != 0) throw FormatError("trailing bytes after checkpoint payload");
    return mps;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ArgumentError("cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f.good()) throw Error("write failed: " + path);
}

}  // namespace camps
