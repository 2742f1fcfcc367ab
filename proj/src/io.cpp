#include "kwcalc/io.hpp"

#include <fstream>
#include <sstream>

#include "kwcalc/errors.hpp"
#include "kwcalc/parse.hpp"

namespace kw {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

/// "key = value" lines; blank lines and '#' comments are skipped.
bool key_value(const std::string& line, std::string& key, std::string& value) {
    auto eq = line.find('=');
    if (eq == std::string::npos) return false;
    key = trim(line.substr(0, eq));
    value = trim(line.substr(eq + 1));
    return true;
}

long parse_nat(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 0) throw Error("");
        return v;
    } catch (...) {
        throw Error(std::string("malformed ") + what + ": " + s);
    }
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SpecPtr parse_bundle(const std::string& text) {
    int d = -1, r = -1;
    RationalMatrix g;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::string key, value;
        if (!key_value(line, key, value)) throw Error("malformed bundle line: " + line);
        if (key == "d") {
            d = static_cast<int>(parse_nat(value, "base dimension"));
        } else if (key == "r") {
            r = static_cast<int>(parse_nat(value, "fiber rank"));
        } else if (key == "g") {
            if (value.size() < 2 || value.front() != '[' || value.back() != ']')
                throw Error("metric must be written as [ rows separated by ';' ]");
            std::string body = value.substr(1, value.size() - 2);
            for (const std::string& row_text : split(body, ';')) {
                std::vector<Rational> row;
                std::istringstream rs(row_text);
                std::string cell;
                while (rs >> cell) row.push_back(Rational::parse(cell));
                g.push_back(std::move(row));
            }
        } else {
            throw Error("unknown bundle key: " + key);
        }
    }
    if (d < 0) throw Error("bundle file is missing d");
    if (r < 0) throw Error("bundle file is missing r");
    if (g.empty()) throw Error("bundle file is missing g");
    return std::make_shared<const BundleSpec>(d, r, std::move(g));
}

SpecPtr load_bundle(const std::string& path) { return parse_bundle(read_file(path)); }

namespace {

int family_index(const BracketTable& table, const std::string& text) {
    GradedElement e = parse_element(table.spec, trim(text));
    for (std::size_t i = 0; i < table.family.size(); ++i)
        if (table.family[i] == e) return static_cast<int>(i);
    throw TableError("argument is not in the generating family for D=" +
                     std::to_string(table.D) + ": " + trim(text));
}

/// Splits "a, b, c" at top-level commas (no nesting in the family grammar,
/// but parentheses are respected).
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(cur);
    return out;
}

} // namespace

BracketTable parse_table(const SpecPtr& spec, const std::string& text) {
    BracketTable table;
    table.spec = spec;
    table.n = -1;
    table.D = -1;
    std::istringstream in(text);
    std::string line;
    bool family_ready = false;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        std::string key, value;
        if (!key_value(line, key, value)) throw TableError("malformed table line: " + line);
        if (key == "arity") {
            table.n = static_cast<int>(parse_nat(value, "arity"));
            continue;
        }
        if (key == "D") {
            table.D = static_cast<int>(parse_nat(value, "degree bound"));
            continue;
        }
        if (table.n < 0 || table.D < 0)
            throw TableError("table must declare arity and D before entries");
        if (!family_ready) {
            table.family = monomial_sections(spec, table.D);
            family_ready = true;
        }
        if (key.rfind("C(", 0) == 0 && key.back() == ')') {
            std::string inner = key.substr(2, key.size() - 3);
            std::vector<int> idx;
            for (const std::string& arg : split_args(inner))
                idx.push_back(family_index(table, arg));
            if (static_cast<int>(idx.size()) != table.n - 1)
                throw TableError("entry has wrong argument count: " + line);
            GradedElement v = parse_element(spec, value);
            if (!v.is_section()) throw TableError("table value must be a section: " + value);
            table.values.insert_or_assign(idx, v);
        } else if (key.rfind("sigma(", 0) == 0 && key.back() == ')') {
            std::string inner = key.substr(6, key.size() - 7);
            auto semi = inner.rfind(';');
            if (semi == std::string::npos)
                throw TableError("sigma entry needs '; x<i>': " + line);
            std::string args_text = inner.substr(0, semi);
            std::string xname = trim(inner.substr(semi + 1));
            if (xname.size() < 2 || xname[0] != 'x')
                throw TableError("sigma entry needs a base coordinate: " + line);
            int xi = static_cast<int>(parse_nat(xname.substr(1), "coordinate index")) - 1;
            if (xi < 0 || xi >= spec->base_dim())
                throw TableError("coordinate index out of range: " + xname);
            std::vector<int> idx;
            for (const std::string& arg : split_args(args_text))
                idx.push_back(family_index(table, arg));
            if (static_cast<int>(idx.size()) != table.n - 2)
                throw TableError("sigma entry has wrong argument count: " + line);
            GradedElement v = parse_element(spec, value);
            if (!v.is_function()) throw TableError("sigma value must be a function: " + value);
            table.symbols.insert_or_assign({idx, xi}, v);
        } else {
            throw TableError("malformed table line: " + line);
        }
    }
    if (table.n < 0 || table.D < 0) throw TableError("table must declare arity and D");
    if (!family_ready) table.family = monomial_sections(spec, table.D);
    return table;
}

BracketTable load_table(const SpecPtr& spec, const std::string& path) {
    return parse_table(spec, read_file(path));
}

std::string render_table(const BracketTable& table) {
    std::ostringstream os;
    os << "arity = " << table.n << "\n";
    os << "D = " << table.D << "\n";
    auto args_text = [&](const std::vector<int>& key) {
        std::ostringstream as;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (i) as << ", ";
            as << table.family[static_cast<std::size_t>(key[i])].str();
        }
        return as.str();
    };
    for (const auto& [key, value] : table.values)
        os << "C(" << args_text(key) << ") = " << value.str() << "\n";
    for (const auto& [key_pair, value] : table.symbols) {
        os << "sigma(" << args_text(key_pair.first) << "; x" << key_pair.second + 1
           << ") = " << value.str() << "\n";
    }
    return os.str();
}

} // namespace kw
