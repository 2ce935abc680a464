#include "jetgeo/manifest.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace jetgeo {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

[[noreturn]] void fail(std::size_t lineno, const std::string& msg) {
    throw ManifestError("line " + std::to_string(lineno) + ": " + msg);
}

Rational rational_at(const std::string& tok, std::size_t lineno) {
    try {
        return Rational::from_string(tok);
    } catch (const std::exception& e) {
        fail(lineno, "bad rational '" + tok + "': " + e.what());
    }
}

struct Entry {
    std::string value;
    std::size_t lineno;
};

/// One parsed section: single-valued keys plus the repeatable point key.
struct Section {
    std::map<std::string, Entry> kv;
    std::vector<Entry> points;
    std::size_t lineno = 0;
    bool seen = false;
};

/// Metric entries gIJ, single digit indices, upper triangle required exactly.
std::vector<std::string> metric_entries(const Section& sec, std::size_t dim,
                                        const char* section_name) {
    std::vector<std::string> upper;
    for (std::size_t i = 1; i <= dim; ++i)
        for (std::size_t j = i; j <= dim; ++j) {
            std::string key = "g" + std::to_string(i) + std::to_string(j);
            auto it = sec.kv.find(key);
            if (it == sec.kv.end())
                fail(sec.lineno, std::string(section_name) + " is missing metric entry " + key);
            upper.push_back(it->second.value);
        }
    return upper;
}

ChartSpec chart_from(const Section& sec, const char* section_name) {
    ChartSpec c;
    auto dim_it = sec.kv.find("dim");
    if (dim_it == sec.kv.end())
        fail(sec.lineno, std::string(section_name) + " needs a dim key");
    try {
        long d = std::stol(dim_it->second.value);
        if (d < 1 || d > 9) throw std::out_of_range("dim");
        c.dim = static_cast<std::size_t>(d);
    } catch (const std::exception&) {
        fail(dim_it->second.lineno, "dim must be an integer between 1 and 9");
    }
    auto coords_it = sec.kv.find("coords");
    if (coords_it == sec.kv.end())
        fail(sec.lineno, std::string(section_name) + " needs a coords key");
    c.coords = split_ws(coords_it->second.value);
    if (c.coords.size() != c.dim)
        fail(coords_it->second.lineno, "coords count does not match dim");
    for (const auto& name : c.coords)
        if (!valid_identifier(name))
            fail(coords_it->second.lineno, "bad coordinate name '" + name + "'");
    for (std::size_t i = 0; i < c.coords.size(); ++i)
        for (std::size_t j = i + 1; j < c.coords.size(); ++j)
            if (c.coords[i] == c.coords[j])
                fail(coords_it->second.lineno, "duplicate coordinate name '" + c.coords[i] + "'");
    c.metric_upper = metric_entries(sec, c.dim, section_name);

    std::size_t expected = 2 + c.dim * (c.dim + 1) / 2;
    if (sec.kv.size() != expected)
        fail(sec.lineno, std::string(section_name) + " has an unknown or extra key");
    for (std::size_t k = 0; k < c.metric_upper.size(); ++k) {
        try {
            parse(c.metric_upper[k], c.coords);
        } catch (const SyntaxError& e) {
            fail(sec.lineno, std::string(section_name) + " metric entry does not parse: " + e.what());
        }
    }
    return c;
}

} // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

Manifest parse_manifest_text(const std::string& text) {
    std::map<std::string, Section> sections;
    const char* known[] = {"domain", "codomain", "map", "points", "jet", "options"};

    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    Section* cur = nullptr;
    std::string cur_name;
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, "unterminated section header");
            std::string name = trim(line.substr(1, line.size() - 2));
            bool ok = false;
            for (const char* k : known) ok = ok || name == k;
            if (!ok) fail(lineno, "unknown section [" + name + "]");
            if (sections[name].seen) fail(lineno, "duplicate section [" + name + "]");
            sections[name].seen = true;
            sections[name].lineno = lineno;
            cur = &sections[name];
            cur_name = name;
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        if (!cur) fail(lineno, "key outside of any section");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (key == "point") {
            if (cur_name != "points") fail(lineno, "point keys belong in [points]");
            cur->points.push_back({value, lineno});
            continue;
        }
        if (cur->kv.count(key)) fail(lineno, "duplicate key '" + key + "'");
        cur->kv[key] = {value, lineno};
    }

    Manifest m;
    m.digest = fnv1a_hex(text);

    if (!sections["domain"].seen) throw ManifestError("manifest has no [domain] section");
    m.domain = chart_from(sections["domain"], "[domain]");
    if (sections["codomain"].seen)
        m.codomain = chart_from(sections["codomain"], "[codomain]");

    if (sections["map"].seen) {
        const Section& sec = sections["map"];
        for (std::size_t i = 1;; ++i) {
            auto it = sec.kv.find("phi" + std::to_string(i));
            if (it == sec.kv.end()) break;
            m.map_components.push_back(it->second.value);
        }
        if (m.map_components.empty())
            fail(sec.lineno, "[map] needs components phi1, phi2, ...");
        if (sec.kv.size() != m.map_components.size())
            fail(sec.lineno, "[map] has an unknown key or a gap in phi numbering");
        for (const auto& comp : m.map_components) {
            try {
                parse(comp, m.domain.coords);
            } catch (const SyntaxError& e) {
                fail(sec.lineno, std::string("[map] component does not parse: ") + e.what());
            }
        }
        if (!m.codomain)
            fail(sec.lineno, "[map] requires a [codomain] section");
        if (m.map_components.size() != m.codomain->dim)
            fail(sec.lineno, "[map] component count does not match the codomain dimension");
    }

    if (sections["points"].seen) {
        const Section& sec = sections["points"];
        if (!sec.kv.empty())
            fail(sec.lineno, "[points] only takes repeated point keys");
        for (const auto& e : sec.points) {
            std::vector<std::string> toks = split_ws(e.value);
            if (toks.size() != m.domain.dim)
                fail(e.lineno, "point arity does not match the domain dimension");
            std::vector<Rational> p;
            p.reserve(toks.size());
            for (const auto& t : toks) p.push_back(rational_at(t, e.lineno));
            m.points.push_back(std::move(p));
        }
        if (m.points.empty()) fail(sec.lineno, "[points] section is empty");
    }

    if (sections["jet"].seen) {
        const Section& sec = sections["jet"];
        JetSpec js;
        auto val_it = sec.kv.find("value");
        if (val_it == sec.kv.end()) fail(sec.lineno, "[jet] needs a value key");
        js.value = rational_at(val_it->second.value, val_it->second.lineno);
        auto p_it = sec.kv.find("p");
        if (p_it == sec.kv.end()) fail(sec.lineno, "[jet] needs a p key");
        std::vector<std::string> toks = split_ws(p_it->second.value);
        if (toks.size() != m.domain.dim)
            fail(p_it->second.lineno, "jet covector arity does not match the domain dimension");
        for (const auto& t : toks) js.p.push_back(rational_at(t, p_it->second.lineno));
        std::size_t n = m.domain.dim;
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = i; j <= n; ++j) {
                std::string key = "h" + std::to_string(i) + std::to_string(j);
                auto it = sec.kv.find(key);
                if (it == sec.kv.end())
                    fail(sec.lineno, "[jet] is missing form entry " + key);
                js.h_upper.push_back(rational_at(it->second.value, it->second.lineno));
            }
        if (sec.kv.size() != 2 + n * (n + 1) / 2)
            fail(sec.lineno, "[jet] has an unknown or extra key");
        m.jet = std::move(js);
    }

    if (sections["options"].seen) {
        const Section& sec = sections["options"];
        for (const auto& [key, entry] : sec.kv) {
            if (key == "mode") {
                if (entry.value == "exact") m.mode = ScalarMode::Exact;
                else if (entry.value == "float64") m.mode = ScalarMode::Float64;
                else fail(entry.lineno, "mode must be exact or float64");
            } else if (key == "tol") {
                try {
                    double t = std::stod(entry.value);
                    if (!(t > 0.0)) throw std::out_of_range("tol");
                    m.tol = t;
                } catch (const std::exception&) {
                    fail(entry.lineno, "tol must be a positive number");
                }
            } else {
                fail(entry.lineno, "unknown option '" + key + "'");
            }
        }
    }

    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestError("cannot open manifest file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest_text(buf.str());
}

} // namespace jetgeo
