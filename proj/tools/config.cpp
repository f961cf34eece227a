#include "config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace bcm::cli {

namespace {

// ---- minimal TOML subset ---------------------------------------------------
// Supports: comments (#), [section], [[array-of-tables]], key = value with
// string / number / boolean / flat array values. Enough for the documented
// config format; anything fancier is rejected with a line diagnostic.

struct Value {
    enum class Kind { Str, Num, Bool, Arr };
    Kind kind = Kind::Num;
    std::string str;
    double num = 0;
    bool boolean = false;
    std::vector<Value> arr;
    int line = 0;
};

using Table = std::map<std::string, Value>;

struct Doc {
    Table root;
    std::map<std::string, Table> sections;
    std::map<std::string, std::vector<Table>> arrays;
};

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw Error(ErrorCode::ConfigError, source + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// strips a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

Value parse_value(const std::string& source, int line, const std::string& raw);

Value parse_array(const std::string& source, int line, const std::string& raw) {
    Value v;
    v.kind = Value::Kind::Arr;
    v.line = line;
    std::string inner = trim(raw.substr(1, raw.size() - 2));
    if (inner.empty()) return v;
    // split on commas outside strings/brackets
    int depth = 0;
    bool in_str = false;
    std::string cur;
    auto push = [&] {
        const std::string t = trim(cur);
        if (t.empty()) fail(source, line, "empty array element");
        v.arr.push_back(parse_value(source, line, t));
        cur.clear();
    };
    for (char c : inner) {
        if (c == '"') in_str = !in_str;
        if (!in_str) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                push();
                continue;
            }
        }
        cur += c;
    }
    push();
    return v;
}

Value parse_value(const std::string& source, int line, const std::string& raw) {
    Value v;
    v.line = line;
    if (raw.empty()) fail(source, line, "missing value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            fail(source, line, "unterminated string");
        v.kind = Value::Kind::Str;
        v.str = raw.substr(1, raw.size() - 2);
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(source, line, "unterminated array");
        return parse_array(source, line, raw);
    }
    if (raw == "true" || raw == "false") {
        v.kind = Value::Kind::Bool;
        v.boolean = raw == "true";
        return v;
    }
    char* end = nullptr;
    v.num = std::strtod(raw.c_str(), &end);
    if (end != raw.c_str() + raw.size())
        fail(source, line, "cannot parse value '" + raw + "'");
    v.kind = Value::Kind::Num;
    return v;
}

Doc parse_toml(const std::string& text, const std::string& source) {
    Doc doc;
    Table* current = &doc.root;
    std::istringstream in(text);
    std::string rawline;
    int lineno = 0;
    while (std::getline(in, rawline)) {
        ++lineno;
        const std::string line = trim(strip_comment(rawline));
        if (line.empty()) continue;
        if (line.front() == '[') {
            const bool is_array = line.size() > 1 && line[1] == '[';
            const std::string close = is_array ? "]]" : "]";
            if (line.substr(line.size() - close.size()) != close)
                fail(source, lineno, "malformed section header");
            const std::string name =
                trim(line.substr(is_array ? 2 : 1, line.size() - 2 * (is_array ? 2 : 1)));
            if (name.empty()) fail(source, lineno, "empty section name");
            if (is_array) {
                doc.arrays[name].emplace_back();
                current = &doc.arrays[name].back();
            } else {
                current = &doc.sections[name];
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(source, lineno, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(source, lineno, "empty key");
        for (char c : key)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
                fail(source, lineno, "invalid key '" + key + "'");
        if (current->count(key)) fail(source, lineno, "duplicate key '" + key + "'");
        (*current)[key] = parse_value(source, lineno, trim(line.substr(eq + 1)));
    }
    return doc;
}

// ---- typed access ----------------------------------------------------------

struct Reader {
    const std::string& source;
    const Table& table;
    std::string prefix;

    const Value* find(const std::string& key) const {
        auto it = table.find(key);
        return it == table.end() ? nullptr : &it->second;
    }

    [[noreturn]] void missing(const std::string& key) const {
        throw Error(ErrorCode::ConfigError,
                    source + ": missing required field '" + prefix + key + "'");
    }

    [[noreturn]] void bad(const Value& v, const std::string& key, const std::string& want) const {
        fail(source, v.line, "field '" + prefix + key + "' must be " + want);
    }

    double number(const std::string& key) const {
        const Value* v = find(key);
        if (!v) missing(key);
        if (v->kind != Value::Kind::Num) bad(*v, key, "a number");
        return v->num;
    }

    double number_or(const std::string& key, double fallback) const {
        const Value* v = find(key);
        if (!v) return fallback;
        if (v->kind != Value::Kind::Num) bad(*v, key, "a number");
        return v->num;
    }

    std::optional<std::string> string_opt(const std::string& key) const {
        const Value* v = find(key);
        if (!v) return std::nullopt;
        if (v->kind != Value::Kind::Str) bad(*v, key, "a string");
        return v->str;
    }

    std::string string(const std::string& key) const {
        auto s = string_opt(key);
        if (!s) missing(key);
        return *s;
    }

    Complex complex_pair(const std::string& key) const {
        const Value* v = find(key);
        if (!v) missing(key);
        if (v->kind == Value::Kind::Num) return {v->num, 0};
        if (v->kind != Value::Kind::Arr || v->arr.size() != 2 ||
            v->arr[0].kind != Value::Kind::Num || v->arr[1].kind != Value::Kind::Num)
            bad(*v, key, "a number or [re, im] pair");
        return {v->arr[0].num, v->arr[1].num};
    }
};

GridSpec read_grid(const std::string& source, const Table& t, const GridSpec& base) {
    Reader r{source, t, "grid."};
    GridSpec g = base;
    if (auto shape = r.string_opt("shape")) {
        if (*shape == "rectangle")
            g.shape = GridSpec::Shape::Rectangle;
        else if (*shape == "annulus")
            g.shape = GridSpec::Shape::Annulus;
        else
            throw Error(ErrorCode::ConfigError,
                        source + ": field 'grid.shape' must be \"rectangle\" or \"annulus\"");
    }
    g.x_min = r.number_or("x_min", g.x_min);
    g.x_max = r.number_or("x_max", g.x_max);
    g.y_min = r.number_or("y_min", g.y_min);
    g.y_max = r.number_or("y_max", g.y_max);
    g.r_min = r.number_or("r_min", g.r_min);
    g.r_max = r.number_or("r_max", g.r_max);
    g.nx = static_cast<int>(r.number_or("nx", g.nx));
    g.ny = static_cast<int>(r.number_or("ny", g.ny));
    if (g.nx < 3 || g.ny < 3)
        throw Error(ErrorCode::ConfigError, source + ": field 'grid.nx/ny' must be at least 3");
    return g;
}

HoloExpr parse_expression_field(const std::string& source, const std::string& field,
                                const std::string& text) {
    try {
        return parse_holomorphic(text);
    } catch (const Error& e) {
        throw Error(ErrorCode::ConfigError, source + ": field '" + field + "': " +
                                                std::string(e.what()));
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
    const Doc doc = parse_toml(text, source);
    Reader root{source, doc.root, ""};

    RunConfig cfg;
    cfg.h_text = root.string("h");
    cfg.h = parse_expression_field(source, "h", cfg.h_text);
    if (!doc.root.count("mu")) root.missing("mu");
    cfg.mu = root.number("mu");

    if (auto it = doc.sections.find("grid"); it != doc.sections.end())
        cfg.grid = read_grid(source, it->second, cfg.grid);
    cfg.grid.validate();

    cfg.fd_step = root.number_or("fd_step", cfg.fd_step);
    cfg.brioschi_step = root.number_or("brioschi_step", cfg.brioschi_step);
    cfg.r_scale = root.number_or("r_scale", cfg.r_scale);
    if (cfg.fd_step <= 0 || cfg.brioschi_step <= 0)
        throw Error(ErrorCode::ConfigError, source + ": steps must be positive");

    if (auto it = doc.sections.find("tolerances"); it != doc.sections.end()) {
        Reader r{source, it->second, "tolerances."};
        cfg.tol.weingarten = r.number_or("weingarten", cfg.tol.weingarten);
        cfg.tol.metric = r.number_or("metric", cfg.tol.metric);
        cfg.tol.conformal = r.number_or("conformal", cfg.tol.conformal);
        cfg.tol.wedge = r.number_or("wedge", cfg.tol.wedge);
        cfg.tol.brioschi = r.number_or("brioschi", cfg.tol.brioschi);
        cfg.tol.specialization = r.number_or("specialization", cfg.tol.specialization);
        for (double t : {cfg.tol.weingarten, cfg.tol.metric, cfg.tol.conformal, cfg.tol.wedge,
                         cfg.tol.brioschi, cfg.tol.specialization})
            if (t < 0)
                throw Error(ErrorCode::ConfigError, source + ": tolerances must be non-negative");
    }

    if (auto it = doc.sections.find("outputs"); it != doc.sections.end()) {
        Reader r{source, it->second, "outputs."};
        cfg.mesh_path = r.string_opt("mesh_path");
        cfg.csv_path = r.string_opt("csv_path");
        cfg.report_path = r.string_opt("report_path");
    }

    if (auto it = doc.sections.find("family"); it != doc.sections.end()) {
        const Value* rho = [&]() -> const Value* {
            auto v = it->second.find("rho");
            return v == it->second.end() ? nullptr : &v->second;
        }();
        if (!rho || rho->kind != Value::Kind::Arr)
            throw Error(ErrorCode::ConfigError,
                        source + ": field 'family.rho' must be an array of numbers");
        for (const Value& v : rho->arr) {
            if (v.kind != Value::Kind::Num)
                fail(source, v.line, "field 'family.rho' must contain numbers");
            cfg.family_rho.push_back(v.num);
        }
    }

    if (auto it = doc.sections.find("reparam"); it != doc.sections.end()) {
        Reader r{source, it->second, "reparam."};
        cfg.reparam = {{r.complex_pair("a"), r.complex_pair("b"), r.complex_pair("c"),
                        r.complex_pair("d")}};
    }

    if (auto it = doc.arrays.find("sweep"); it != doc.arrays.end()) {
        for (const Table& t : it->second) {
            Reader r{source, t, "sweep."};
            SweepEntry entry;
            entry.h_text = r.string("h");
            parse_expression_field(source, "sweep.h", entry.h_text);
            entry.mu = r.number("mu");
            // per-entry grid override uses the same keys inline
            bool has_grid = false;
            for (const char* k : {"shape", "x_min", "x_max", "y_min", "y_max", "r_min", "r_max",
                                  "nx", "ny"})
                if (t.count(k)) has_grid = true;
            if (has_grid) entry.grid = read_grid(source, t, cfg.grid);
            cfg.sweep.push_back(std::move(entry));
        }
    }

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

} // namespace bcm::cli
