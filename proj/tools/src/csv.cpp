#include <sstream>
#include <stdexcept>

#include "nilcps/cli.hpp"

namespace nilcps::cli {

const std::map<std::string, int>& csv_versions() {
    static const std::map<std::string, int> v = {
        {"census", 1}, {"slab", 1}, {"model-set", 1}, {"beck", 1}};
    return v;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].find_first_of(",\n") != std::string::npos) throw std::invalid_argument("csv field holds a separator");
        if (i) s += ',';
        s += v[i];
    }
    return s;
}

}  // namespace

std::string write_csv(const CsvTable& t) {
    std::string s = "# nilcps-csv " + t.kind + " v" + std::to_string(t.version) + "\n";
    s += join(t.columns) + "\n";
    for (const auto& r : t.rows) {
        if (r.size() != t.columns.size()) throw std::invalid_argument("csv row width differs from the header");
        s += join(r) + "\n";
    }
    for (const auto& f : t.footer) s += "# " + f + "\n";
    return s;
}

CsvTable read_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CsvTable t;
    if (!std::getline(in, line)) throw std::runtime_error("empty csv");
    std::istringstream head(line);
    std::string hash, magic, ver;
    head >> hash >> magic >> t.kind >> ver;
    if (hash != "#" || magic != "nilcps-csv" || ver.size() < 2 || ver[0] != 'v')
        throw std::runtime_error("csv lacks the nilcps schema line");
    try {
        t.version = std::stoi(ver.substr(1));
    } catch (const std::exception&) {
        throw std::runtime_error("bad schema version '" + ver + "'");
    }
    auto it = csv_versions().find(t.kind);
    if (it == csv_versions().end()) throw std::runtime_error("unknown csv kind '" + t.kind + "'");
    if (it->second != t.version)
        throw std::runtime_error("unsupported " + t.kind + " schema version " + std::to_string(t.version));
    if (!std::getline(in, line)) throw std::runtime_error("csv lacks a header row");
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.footer.push_back(line.size() > 2 ? line.substr(2) : "");
            continue;
        }
        auto r = split(line);
        if (r.size() != t.columns.size()) throw std::runtime_error("csv row width differs from the header");
        t.rows.push_back(std::move(r));
    }
    return t;
}

}  // namespace nilcps::cli
