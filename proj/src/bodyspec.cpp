#include "polyapprox/bodyspec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <vector>

namespace polyapprox {
namespace {

struct Pos {
  int line = 1;
  int column = 1;
};

struct Entry {
  std::string value;
  Pos key_pos;
  Pos value_pos;
};

struct Block {
  Pos pos;
  std::multimap<std::string, Entry> entries;
  std::map<std::string, std::pair<Pos, std::unique_ptr<Block>>> children;
};

bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find('\n', start);
      std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.emplace_back(line);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }

  std::unique_ptr<Block> parse() {
    auto root = std::make_unique<Block>();
    parse_block(*root, false);
    return root;
  }

 private:
  void parse_block(Block& block, bool nested) {
    while (row_ < lines_.size()) {
      const std::string& raw = lines_[row_];
      const int line_no = static_cast<int>(row_) + 1;
      ++row_;
      std::string line = raw.substr(0, raw.find('#'));
      std::size_t i = skip_space(line, 0);
      if (i == line.size()) continue;
      if (line[i] == '}') {
        if (!nested) throw SpecParseError(line_no, static_cast<int>(i) + 1, "unmatched '}'");
        expect_end(line, i + 1, line_no);
        return;
      }
      const std::size_t key_start = i;
      while (i < line.size() && is_ident(line[i])) ++i;
      if (i == key_start) {
        throw SpecParseError(line_no, static_cast<int>(i) + 1, "expected a key");
      }
      const std::string key = line.substr(key_start, i - key_start);
      const Pos key_pos{line_no, static_cast<int>(key_start) + 1};
      i = skip_space(line, i);
      if (i < line.size() && line[i] == '{') {
        expect_end(line, i + 1, line_no);
        if (block.children.count(key) != 0) {
          throw SpecParseError(key_pos.line, key_pos.column, "duplicate block '" + key + "'");
        }
        auto child = std::make_unique<Block>();
        child->pos = key_pos;
        parse_block(*child, true);
        block.children.emplace(key, std::make_pair(key_pos, std::move(child)));
        continue;
      }
      if (i >= line.size() || line[i] != '=') {
        throw SpecParseError(line_no, static_cast<int>(i) + 1, "expected '=' or '{' after '" + key + "'");
      }
      const std::size_t value_start = skip_space(line, i + 1);
      std::string value = line.substr(value_start);
      while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
      if (value.empty()) {
        throw SpecParseError(line_no, static_cast<int>(value_start) + 1, "missing value for '" + key + "'");
      }
      block.entries.emplace(key, Entry{value, key_pos, {line_no, static_cast<int>(value_start) + 1}});
    }
    if (nested) {
      throw SpecParseError(block.pos.line, block.pos.column, "block is not closed with '}'");
    }
  }

  static std::size_t skip_space(const std::string& s, std::size_t i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    return i;
  }

  static void expect_end(const std::string& s, std::size_t i, int line_no) {
    i = skip_space(s, i);
    if (i != s.size()) throw SpecParseError(line_no, static_cast<int>(i) + 1, "unexpected text");
  }

  std::vector<std::string> lines_;
  std::size_t row_ = 0;
};

// Whitespace-separated numbers, with the column of the offending token on error.
std::vector<double> numbers(const Entry& e) {
  std::vector<double> out;
  const std::string& s = e.value;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    double v = 0.0;
    const char* first = s.data() + i;
    const char* last = s.data() + j;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw SpecParseError(e.value_pos.line, e.value_pos.column + static_cast<int>(i),
                           "expected a number, got '" + s.substr(i, j - i) + "'");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

Vector to_vector(const Entry& e, const std::vector<double>& xs) {
  if (xs.empty() || xs.size() > 3) {
    throw SpecParseError(e.value_pos.line, e.value_pos.column, "expected 1 to 3 coordinates");
  }
  Vector v(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t k = 0; k < xs.size(); ++k) v[static_cast<Eigen::Index>(k)] = xs[k];
  return v;
}

class Builder {
 public:
  ConvexBody build(const Block& b) {
    const Entry& kind_entry = single(b, "kind");
    const std::string& kind = kind_entry.value;
    std::set<std::string> keys{"kind"};
    std::set<std::string> blocks;
    std::set<std::string> repeated;
    auto body = [&]() -> ConvexBody {
      if (kind == "ball") {
        keys.insert({"center", "radius"});
        check(b, keys, blocks, repeated);
        return ConvexBody::ball(vec(b, "center"), scalar(b, "radius"));
      }
      if (kind == "ellipsoid") {
        keys.insert({"center", "axes", "rotation"});
        check(b, keys, blocks, repeated);
        const Vector c = vec(b, "center");
        const Vector axes = vec(b, "axes");
        if (b.entries.count("rotation") == 0) return ConvexBody::ellipsoid(c, axes);
        const Entry& e = single(b, "rotation");
        const auto xs = numbers(e);
        const auto n = static_cast<std::size_t>(axes.size());
        if (xs.size() != n * n) {
          throw SpecParseError(e.value_pos.line, e.value_pos.column,
                               "rotation needs " + std::to_string(n * n) + " numbers (row-major)");
        }
        Matrix r(axes.size(), axes.size());
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = xs[i * n + j];
          }
        }
        return ConvexBody::ellipsoid(c, axes, r);
      }
      if (kind == "power_cap") {
        keys.insert("exponent");
        check(b, keys, blocks, repeated);
        return ConvexBody::power_cap(scalar(b, "exponent"));
      }
      if (kind == "ball_intersection") {
        keys.insert({"center", "radius"});
        repeated.insert("center");
        check(b, keys, blocks, repeated);
        std::vector<Vector> centers;
        const auto [lo, hi] = b.entries.equal_range("center");
        for (auto it = lo; it != hi; ++it) centers.push_back(to_vector(it->second, numbers(it->second)));
        if (centers.empty()) missing(b, "center");
        return ConvexBody::ball_intersection(std::move(centers), scalar(b, "radius"));
      }
      if (kind == "minkowski_sum") {
        blocks.insert({"left", "right"});
        check(b, keys, blocks, repeated);
        return ConvexBody::minkowski_sum(build(child(b, "left")), build(child(b, "right")));
      }
      if (kind == "translate") {
        keys.insert("shift");
        blocks.insert("inner");
        check(b, keys, blocks, repeated);
        return ConvexBody::translate(build(child(b, "inner")), vec(b, "shift"));
      }
      if (kind == "hpolytope") {
        keys.insert("halfspace");
        repeated.insert("halfspace");
        check(b, keys, blocks, repeated);
        std::vector<Halfspace> hs;
        const auto [lo, hi] = b.entries.equal_range("halfspace");
        for (auto it = lo; it != hi; ++it) {
          auto xs = numbers(it->second);
          if (xs.size() < 2) {
            throw SpecParseError(it->second.value_pos.line, it->second.value_pos.column,
                                 "halfspace needs a normal and an offset");
          }
          const double offset = xs.back();
          xs.pop_back();
          hs.push_back({to_vector(it->second, xs), offset});
        }
        if (hs.empty()) missing(b, "halfspace");
        return ConvexBody::hpolytope(std::move(hs));
      }
      throw SpecParseError(kind_entry.value_pos.line, kind_entry.value_pos.column,
                           "unknown body kind '" + kind + "'");
    };
    return body();
  }

 private:
  static void check(const Block& b, const std::set<std::string>& keys,
                    const std::set<std::string>& blocks, const std::set<std::string>& repeated) {
    for (auto it = b.entries.begin(); it != b.entries.end(); ++it) {
      if (keys.count(it->first) == 0) {
        throw SpecParseError(it->second.key_pos.line, it->second.key_pos.column,
                             "unknown key '" + it->first + "'");
      }
      if (repeated.count(it->first) == 0 && b.entries.count(it->first) > 1) {
        const auto second = std::next(b.entries.find(it->first));
        throw SpecParseError(second->second.key_pos.line, second->second.key_pos.column,
                             "duplicate key '" + it->first + "'");
      }
    }
    for (const auto& [name, child] : b.children) {
      if (blocks.count(name) == 0) {
        throw SpecParseError(child.first.line, child.first.column, "unknown block '" + name + "'");
      }
    }
  }

  [[noreturn]] static void missing(const Block& b, const std::string& key) {
    throw SpecParseError(b.pos.line, b.pos.column, "missing key '" + key + "'");
  }

  static const Entry& single(const Block& b, const std::string& key) {
    const auto it = b.entries.find(key);
    if (it == b.entries.end()) missing(b, key);
    return it->second;
  }

  static const Block& child(const Block& b, const std::string& name) {
    const auto it = b.children.find(name);
    if (it == b.children.end()) {
      throw SpecParseError(b.pos.line, b.pos.column, "missing block '" + name + " { ... }'");
    }
    return *it->second.second;
  }

  static double scalar(const Block& b, const std::string& key) {
    const Entry& e = single(b, key);
    const auto xs = numbers(e);
    if (xs.size() != 1) {
      throw SpecParseError(e.value_pos.line, e.value_pos.column, "'" + key + "' takes one number");
    }
    return xs.front();
  }

  static Vector vec(const Block& b, const std::string& key) {
    const Entry& e = single(b, key);
    return to_vector(e, numbers(e));
  }
};

}  // namespace

ConvexBody parse_body_spec(std::string_view text) {
  Parser parser(text);
  const auto root = parser.parse();
  return Builder().build(*root);
}

ConvexBody load_body_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_body_spec(ss.str());
}

}  // namespace polyapprox
