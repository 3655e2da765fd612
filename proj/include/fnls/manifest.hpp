#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fnls {

// Ordered key = value text. Setting a key twice replaces the value in place.
class Manifest {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, double value);
    void set(const std::string& key, int value) { set(key, static_cast<long long>(value)); }
    void set(const std::string& key, long value) { set(key, static_cast<long long>(value)); }
    void set(const std::string& key, long long value);
    void set(const std::string& key, std::uint64_t value);
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }

    std::optional<std::string> get(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

    std::string str() const;
    void write(const std::string& path) const;
    static Manifest parse(const std::string& text);
    static Manifest read(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// shortest round-trip form; "inf" / "nan" spelled out
std::string format_real(double x);

}  // namespace fnls
