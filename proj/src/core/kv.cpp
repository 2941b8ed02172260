#include "limca/core/kv.hpp"

#include <fstream>
#include <sstream>

#include "limca/core/errors.hpp"

namespace limca {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValues KeyValues::parse(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto colon = t.find(':');
        if (colon == std::string::npos) throw DomainError("line " + std::to_string(lineno) + ": expected 'key: value'");
        kv.add(trim(t.substr(0, colon)), trim(t.substr(colon + 1)));
    }
    return kv;
}

KeyValues KeyValues::load(const std::string& path) { return parse(read_file(path)); }

void KeyValues::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

bool KeyValues::has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return true;
    return false;
}

const std::string& KeyValues::get(const std::string& key) const {
    const std::string* found = nullptr;
    for (const auto& [k, v] : entries_) {
        if (k != key) continue;
        if (found) throw DomainError("key '" + key + "' repeated");
        found = &v;
    }
    if (!found) throw DomainError("missing key '" + key + "'");
    return *found;
}

std::string KeyValues::get_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get(key) : fallback;
}

long long KeyValues::get_int(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used != v.size()) throw DomainError("");
        return x;
    } catch (const std::exception&) {
        throw DomainError("key '" + key + "' is not an integer: " + v);
    }
}

std::vector<std::string> KeyValues::get_all(const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_)
        if (k == key) out.push_back(v);
    return out;
}

std::string KeyValues::str() const {
    std::string s;
    for (const auto& [k, v] : entries_) s += k + ": " + v + "\n";
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write " + path);
    out << content;
}

std::string dir_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    if (slash == std::string::npos) return ".";
    return slash == 0 ? "/" : path.substr(0, slash);
}

std::string join_path(const std::string& dir, const std::string& rel) {
    if (!rel.empty() && rel[0] == '/') return rel;
    if (dir.empty() || dir == ".") return rel;
    return dir + "/" + rel;
}

}  // namespace limca
