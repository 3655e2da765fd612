#include "fnls/manifest.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

#include "fnls/errors.hpp"

namespace fnls {

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void Manifest::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void Manifest::set(const std::string& key, double value) { set(key, format_real(value)); }
void Manifest::set(const std::string& key, long long value) { set(key, std::to_string(value)); }
void Manifest::set(const std::string& key, std::uint64_t value) { set(key, std::to_string(value)); }

std::optional<std::string> Manifest::get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return v;
    return std::nullopt;
}

std::string Manifest::str() const {
    std::string s;
    for (const auto& [k, v] : entries_) s += k + " = " + v + "\n";
    return s;
}

void Manifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot write manifest: " + path);
    out << str();
}

Manifest Manifest::parse(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (line.empty() || line[0] == '#' || eq == std::string::npos) continue;
        m.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return m;
}

Manifest Manifest::read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read manifest: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

}  // namespace fnls
