#include "transgress/errors.hpp"
#include "transgress/scenario.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace transgress {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

double to_number(const std::string& s, const std::string& context) {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(context + ": '" + s + "' is not a number");
    return v;
}

}  // namespace

SpecString parse_spec_string(std::string_view text) {
    const std::string src = trim(text);
    SpecString out;
    const auto open = src.find('(');
    if (open == std::string::npos) {
        if (!is_identifier(src)) throw ConfigError("bad constructor name '" + src + "'");
        out.name = src;
        return out;
    }
    if (src.back() != ')') throw ConfigError("'" + src + "': missing closing parenthesis");
    out.name = trim(std::string_view(src).substr(0, open));
    if (!is_identifier(out.name)) throw ConfigError("'" + src + "': bad constructor name");
    const std::string body = src.substr(open + 1, src.size() - open - 2);
    if (trim(body).empty()) return out;
    int depth = 0;
    std::size_t start = 0;
    std::vector<std::string> pieces;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i == body.size() || (body[i] == ',' && depth == 0)) {
            pieces.push_back(body.substr(start, i - start));
            start = i + 1;
        } else if (body[i] == '(') {
            ++depth;
        } else if (body[i] == ')') {
            if (--depth < 0) throw ConfigError("'" + src + "': unbalanced parentheses");
        }
    }
    if (depth != 0) throw ConfigError("'" + src + "': unbalanced parentheses");
    int positional = 0;
    for (const std::string& piece : pieces) {
        const std::string p = trim(piece);
        if (p.empty()) throw ConfigError("'" + src + "': empty argument");
        const auto eq = p.find('=');
        const auto paren = p.find('(');
        if (eq != std::string::npos && (paren == std::string::npos || eq < paren)) {
            const std::string key = trim(std::string_view(p).substr(0, eq));
            if (!is_identifier(key)) throw ConfigError("'" + src + "': bad argument name '" + key + "'");
            if (out.has(key)) throw ConfigError("'" + src + "': duplicate argument '" + key + "'");
            out.args.emplace_back(key, trim(std::string_view(p).substr(eq + 1)));
        } else {
            out.args.emplace_back(std::to_string(positional++), p);
        }
    }
    return out;
}

bool SpecString::has(std::string_view key) const {
    for (const auto& [k, v] : args)
        if (k == key) return true;
    return false;
}

std::string SpecString::text(std::string_view key) const {
    for (const auto& [k, v] : args)
        if (k == key) return v;
    throw ConfigError(name + ": missing argument '" + std::string(key) + "'");
}

std::string SpecString::text_or(std::string_view key, std::string fallback) const {
    return has(key) ? text(key) : fallback;
}

double SpecString::number(std::string_view key) const { return to_number(text(key), name + "." + std::string(key)); }

double SpecString::number_or(std::string_view key, double fallback) const { return has(key) ? number(key) : fallback; }

int SpecString::integer_or(std::string_view key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != static_cast<double>(static_cast<int>(v)))
        throw ConfigError(name + "." + std::string(key) + " must be an integer");
    return static_cast<int>(v);
}

std::string SpecString::str() const {
    std::ostringstream os;
    os << name << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ", ";
        if (!std::isdigit(static_cast<unsigned char>(args[i].first[0]))) os << args[i].first << '=';
        os << args[i].second;
    }
    os << ')';
    return os.str();
}

void Params::fail(const std::string& key, const std::string& what) const {
    throw ConfigError("check '" + owner_ + "': key '" + key + "' " + what);
}

double Params::number(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "is missing");
    if (const double* v = std::get_if<double>(&it->second)) return *v;
    fail(key, "must be a number");
}

double Params::number_or(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

int Params::integer_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = number(key);
    if (v != static_cast<double>(static_cast<int>(v))) fail(key, "must be an integer");
    return static_cast<int>(v);
}

bool Params::flag_or(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (const bool* v = std::get_if<bool>(&it->second)) return *v;
    fail(key, "must be true or false");
}

const std::string& Params::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "is missing");
    if (const std::string* v = std::get_if<std::string>(&it->second)) return *v;
    fail(key, "must be a string");
}

std::string Params::text_or(const std::string& key, std::string fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Params::numbers(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "is missing");
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    if (const double* v = std::get_if<double>(&it->second)) return {*v};
    fail(key, "must be a list of numbers");
}

std::vector<std::string> Params::texts(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) fail(key, "is missing");
    if (const auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
    if (const auto* v = std::get_if<std::string>(&it->second)) return {*v};
    fail(key, "must be a list of strings");
}

}  // namespace transgress
