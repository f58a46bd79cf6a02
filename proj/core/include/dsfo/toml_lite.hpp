#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsfo::tomllite {

/// Minimal TOML subset: [a.b] section headers, `key = value` pairs, values
/// of type string / integer / float / boolean / (nested, possibly multi-line)
/// array, and # comments. No array-of-tables, dates or inline tables.

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Value {
  enum class Type { Bool, Int, Float, String, Array };
  Type type = Type::Int;
  bool b = false;
  long long i = 0;
  double f = 0.0;
  std::string s;
  std::vector<Value> array;

  bool is_number() const { return type == Type::Int || type == Type::Float; }
  double as_double() const;
};

struct Node {
  std::map<std::string, Node> children;
  std::optional<Value> value;
  int line = 0;
  mutable bool touched = false;
};

class Document {
 public:
  static Document parse_file(const std::string& path);
  static Document parse(const std::string& text, const std::string& origin);

  const Node& root() const { return root_; }
  const std::string& origin() const { return origin_; }

  /// nullptr when the dotted path is absent.
  const Node* find(const std::string& dotted_path) const;

  /// Dotted paths of all leaves never marked touched (unknown-key detection).
  std::vector<std::string> untouched_leaves() const;

 private:
  Node root_;
  std::string origin_;
};

}  // namespace dsfo::tomllite
