#include "nilcps/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nilcps {

using nlohmann::json;

namespace {

// Finds the text offset of the value at a JSON pointer. The text has
// already been parsed, so the scanner only needs to skip well-formed values.
class Locator {
public:
    explicit Locator(const std::string& t) : t_(t) {}

    std::size_t find(const std::string& pointer) {
        std::vector<std::string> parts;
        std::size_t i = 1;
        while (i <= pointer.size() && !pointer.empty()) {
            std::size_t j = pointer.find('/', i);
            if (j == std::string::npos) j = pointer.size();
            parts.push_back(pointer.substr(i, j - i));
            i = j + 1;
        }
        p_ = 0;
        ws();
        for (const auto& part : parts) {
            std::size_t at = p_;
            if (!descend(part)) return at;
            ws();
        }
        return p_;
    }

private:
    const std::string& t_;
    std::size_t p_ = 0;

    void ws() {
        while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
    }
    std::string str() {
        std::string out;
        ++p_;
        while (p_ < t_.size() && t_[p_] != '"') {
            if (t_[p_] == '\\') ++p_;
            if (p_ < t_.size()) out += t_[p_++];
        }
        ++p_;
        return out;
    }
    void skip() {
        ws();
        if (p_ >= t_.size()) return;
        char c = t_[p_];
        if (c == '"') {
            str();
        } else if (c == '{' || c == '[') {
            char close = c == '{' ? '}' : ']';
            ++p_;
            ws();
            while (p_ < t_.size() && t_[p_] != close) {
                if (c == '{') {
                    str();
                    ws();
                    ++p_;  // ':'
                }
                skip();
                ws();
                if (p_ < t_.size() && t_[p_] == ',') ++p_;
                ws();
            }
            ++p_;
        } else {
            while (p_ < t_.size() && std::string(",]} \t\r\n").find(t_[p_]) == std::string::npos) ++p_;
        }
    }
    bool descend(const std::string& part) {
        if (p_ >= t_.size()) return false;
        if (t_[p_] == '{') {
            ++p_;
            ws();
            while (p_ < t_.size() && t_[p_] == '"') {
                std::string key = str();
                ws();
                ++p_;
                ws();
                if (key == part) return true;
                skip();
                ws();
                if (p_ < t_.size() && t_[p_] == ',') ++p_;
                ws();
            }
            return false;
        }
        if (t_[p_] == '[') {
            long idx;
            try {
                idx = std::stol(part);
            } catch (const std::exception&) {
                return false;
            }
            ++p_;
            ws();
            for (long k = 0; k < idx; ++k) {
                if (p_ >= t_.size() || t_[p_] == ']') return false;
                skip();
                ws();
                if (p_ < t_.size() && t_[p_] == ',') ++p_;
                ws();
            }
            return p_ < t_.size() && t_[p_] != ']';
        }
        return false;
    }
};

std::string line_col(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

struct Ctx {
    std::string origin;
    const std::string* text = nullptr;
    [[noreturn]] void fail(const std::string& path, const std::string& msg) const {
        std::string where = origin;
        if (text) where += ":" + line_col(*text, Locator(*text).find(path));
        throw ConfigError(where + ": at " + (path.empty() ? "/" : path) + ": " + msg);
    }
};

const json& need(const Ctx& c, const json& j, const std::string& path, const char* key) {
    if (!j.is_object() || !j.contains(key)) c.fail(path, std::string("missing key '") + key + "'");
    return j.at(key);
}

Rational rat(const Ctx& c, const json& j, const std::string& path) {
    try {
        if (j.is_string()) return parse_rational(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long>());
    } catch (const std::exception& e) {
        c.fail(path, e.what());
    }
    c.fail(path, "expected an exact rational (integer or \"p/q\" string)");
}

long integer(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_number_integer()) c.fail(path, "expected an integer");
    return j.get<long>();
}

GroupSpec group(const Ctx& c, const json& j, const std::string& path) {
    int n = int(integer(c, need(c, j, path, "dim"), path + "/dim"));
    if (n < 1) c.fail(path + "/dim", "dimension must be positive");
    std::vector<Rational> w;
    const json& jw = need(c, j, path, "weights");
    if (!jw.is_array() || int(jw.size()) != n) c.fail(path + "/weights", "expected dim rational weights");
    for (std::size_t i = 0; i < jw.size(); ++i) w.push_back(rat(c, jw[i], path + "/weights/" + std::to_string(i)));
    std::vector<Bracket> br;
    if (j.contains("brackets")) {
        const json& jb = j.at("brackets");
        if (!jb.is_array()) c.fail(path + "/brackets", "expected an array of [i, j, k, c]");
        for (std::size_t t = 0; t < jb.size(); ++t) {
            std::string p = path + "/brackets/" + std::to_string(t);
            if (!jb[t].is_array() || jb[t].size() != 4) c.fail(p, "expected [i, j, k, c]");
            int idx[3];
            for (int q = 0; q < 3; ++q) {
                idx[q] = int(integer(c, jb[t][q], p + "/" + std::to_string(q))) - 1;
                if (idx[q] < 0 || idx[q] >= n) c.fail(p, "index out of range 1..dim");
            }
            br.push_back({idx[0], idx[1], idx[2], rat(c, jb[t][3], p + "/3")});
        }
    }
    NormKind norm = NormKind::WeightedMax;
    if (j.contains("norm")) {
        std::string s = j.at("norm").is_string() ? j.at("norm").get<std::string>() : "";
        if (s == "koranyi") norm = NormKind::Koranyi;
        else if (s != "weighted-max") c.fail(path + "/norm", "norm must be \"weighted-max\" or \"koranyi\"");
    }
    try {
        GroupSpec g(n, w, br, norm);
        g.validate();
        return g;
    } catch (const std::exception& e) {
        c.fail(path, e.what());
    }
}

const Field* field(const Ctx& c, const json& j, const std::string& path) {
    try {
        if (j.contains("D")) return Field::quadratic(integer(c, j.at("D"), path + "/D"));
        const json& mp = need(c, j, path, "minpoly");
        const json& sg = need(c, j, path, "sigma");
        const json& rt = need(c, j, path, "root");
        if (!mp.is_array() || mp.size() != 3) c.fail(path + "/minpoly", "expected [m2, m1, m0]");
        if (!sg.is_array() || sg.size() != 3) c.fail(path + "/sigma", "expected [s0, s1, s2]");
        if (!rt.is_array() || rt.size() != 2) c.fail(path + "/root", "expected [lo, hi]");
        std::array<long, 3> m;
        std::array<Rational, 3> s;
        for (int i = 0; i < 3; ++i) {
            m[2 - i] = integer(c, mp[i], path + "/minpoly/" + std::to_string(i));
            s[i] = rat(c, sg[i], path + "/sigma/" + std::to_string(i));
        }
        return Field::cubic(m, s, rat(c, rt[0], path + "/root/0"), rat(c, rt[1], path + "/root/1"));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        c.fail(path, e.what());
    }
}

json rat_json(const Rational& q) { return to_string(q); }

json group_json(const GroupSpec& g) {
    json j;
    j["dim"] = g.dim();
    j["weights"] = json::array();
    for (const auto& w : g.weights()) j["weights"].push_back(rat_json(w));
    j["brackets"] = json::array();
    for (const auto& b : g.brackets()) j["brackets"].push_back({b.i + 1, b.j + 1, b.k + 1, rat_json(b.c)});
    j["norm"] = g.norm() == NormKind::Koranyi ? "koranyi" : "weighted-max";
    return j;
}

}  // namespace

SchemeSpec parse_scheme(const std::string& text, const std::string& origin) {
    Ctx c{origin, &text};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ":" + line_col(text, e.byte > 0 ? e.byte - 1 : 0) + ": syntax error");
    }
    SchemeSpec s;
    s.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "unnamed";
    s.field = field(c, need(c, j, "", "field"), "/field");
    s.g = group(c, need(c, j, "", "g"), "/g");
    s.h = group(c, need(c, j, "", "h"), "/h");
    std::string chart = j.contains("chart") && j["chart"].is_string() ? j["chart"].get<std::string>() : "exponential";
    if (chart == "heisenberg-matrix") s.chart = ModuleChart::HeisenbergMatrix;
    else if (chart != "exponential") c.fail("/chart", "chart must be \"exponential\" or \"heisenberg-matrix\"");
    const json& jw = need(c, j, "", "window");
    if (!jw.is_array() || jw.empty()) c.fail("/window", "expected a nonempty array of half-spaces");
    s.window.dim = s.h.dim();
    for (std::size_t t = 0; t < jw.size(); ++t) {
        std::string p = "/window/" + std::to_string(t);
        const json& nj = need(c, jw[t], p, "normal");
        if (!nj.is_array() || int(nj.size()) != s.h.dim()) c.fail(p + "/normal", "expected dim(H) rationals");
        HalfSpace hs;
        for (std::size_t i = 0; i < nj.size(); ++i)
            hs.normal.push_back(ExactScalar(rat(c, nj[i], p + "/normal/" + std::to_string(i))));
        hs.offset = ExactScalar(rat(c, need(c, jw[t], p, "offset"), p + "/offset"));
        s.window.hs.push_back(std::move(hs));
    }
    try {
        s.validate();
    } catch (const ValidationError& e) {
        std::string what = e.what();
        c.fail(what.find("window") != std::string::npos ? "/window" : "", "invalid scheme: " + what);
    }
    return s;
}

SchemeSpec load_scheme(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scheme(ss.str(), path);
}

std::string scheme_to_json(const SchemeSpec& s) {
    json j;
    j["name"] = s.name;
    if (s.field->degree() == 2) {
        j["field"] = {{"D", s.field->D()}};
    } else {
        json f;
        f["minpoly"] = {s.field->minpoly()[2], s.field->minpoly()[1], s.field->minpoly()[0]};
        f["sigma"] = json::array();
        for (const auto& v : s.field->sigma()) f["sigma"].push_back(rat_json(v));
        f["root"] = {rat_json(s.field->root_lo()), rat_json(s.field->root_hi())};
        j["field"] = f;
    }
    j["g"] = group_json(s.g);
    j["h"] = group_json(s.h);
    j["chart"] = s.chart == ModuleChart::HeisenbergMatrix ? "heisenberg-matrix" : "exponential";
    j["window"] = json::array();
    for (const auto& hs : s.window.hs) {
        json n = json::array();
        for (const auto& v : hs.normal) n.push_back(rat_json(v.coeff(0)));
        j["window"].push_back({{"normal", n}, {"offset", rat_json(hs.offset.coeff(0))}});
    }
    return j.dump(2) + "\n";
}

}  // namespace nilcps
