#include "dsfo/toml_lite.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace dsfo::tomllite {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (c == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool valid_key_part(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

std::vector<std::string> split_dotted(const std::string& path, const std::string& origin,
                                      int line) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : path) {
    if (c == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  for (std::string& p : parts) {
    p = trim(p);
    if (!valid_key_part(p)) fail(origin, line, "invalid key '" + path + "'");
  }
  return parts;
}

struct ValueParser {
  const std::string& text;
  std::size_t pos = 0;
  const std::string& origin;
  int line;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  Value parse() {
    skip_ws();
    if (pos >= text.size()) fail(origin, line, "missing value");
    const char c = text[pos];
    if (c == '[') return parse_array();
    if (c == '"') return parse_string();
    return parse_scalar();
  }

  Value parse_array() {
    Value v;
    v.type = Value::Type::Array;
    ++pos;  // '['
    skip_ws();
    if (pos < text.size() && text[pos] == ']') {
      ++pos;
      return v;
    }
    while (true) {
      v.array.push_back(parse());
      skip_ws();
      if (pos >= text.size()) fail(origin, line, "unterminated array");
      if (text[pos] == ',') {
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ']') {  // trailing comma
          ++pos;
          return v;
        }
        continue;
      }
      if (text[pos] == ']') {
        ++pos;
        return v;
      }
      fail(origin, line, "expected ',' or ']' in array");
    }
  }

  Value parse_string() {
    Value v;
    v.type = Value::Type::String;
    ++pos;  // '"'
    while (pos < text.size() && text[pos] != '"') {
      char c = text[pos];
      if (c == '\\' && pos + 1 < text.size()) {
        ++pos;
        switch (text[pos]) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail(origin, line, "unsupported escape in string");
        }
      }
      v.s.push_back(c);
      ++pos;
    }
    if (pos >= text.size()) fail(origin, line, "unterminated string");
    ++pos;  // closing '"'
    return v;
  }

  Value parse_scalar() {
    std::size_t end = pos;
    while (end < text.size() && text[end] != ',' && text[end] != ']' &&
           !std::isspace(static_cast<unsigned char>(text[end]))) {
      ++end;
    }
    const std::string token = text.substr(pos, end - pos);
    pos = end;
    Value v;
    if (token == "true" || token == "false") {
      v.type = Value::Type::Bool;
      v.b = token == "true";
      return v;
    }
    bool integral = !token.empty();
    for (std::size_t i = 0; i < token.size(); ++i) {
      const char c = token[i];
      if (i == 0 && (c == '+' || c == '-')) continue;
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        integral = false;
        break;
      }
    }
    char* parse_end = nullptr;
    if (integral) {
      v.type = Value::Type::Int;
      v.i = std::strtoll(token.c_str(), &parse_end, 10);
    } else {
      v.type = Value::Type::Float;
      v.f = std::strtod(token.c_str(), &parse_end);
    }
    if (parse_end == nullptr || *parse_end != '\0' || token.empty()) {
      fail(origin, line, "cannot parse value '" + token + "'");
    }
    return v;
  }
};

Node* descend(Node* node, const std::vector<std::string>& parts, const std::string& origin,
              int line) {
  for (const std::string& p : parts) {
    Node& child = node->children[p];
    if (child.line == 0) child.line = line;
    if (child.value.has_value()) fail(origin, line, "key '" + p + "' already holds a value");
    node = &child;
  }
  return node;
}

void collect_untouched(const Node& node, const std::string& prefix,
                       std::vector<std::string>& out) {
  for (const auto& [key, child] : node.children) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (child.value.has_value()) {
      if (!child.touched) out.push_back(path);
    } else {
      collect_untouched(child, path, out);
    }
  }
}

}  // namespace

double Value::as_double() const {
  if (type == Type::Int) return static_cast<double>(i);
  if (type == Type::Float) return f;
  throw ParseError("value is not numeric");
}

Document Document::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

Document Document::parse(const std::string& text, const std::string& origin) {
  Document doc;
  doc.origin_ = origin;
  Node* section = &doc.root_;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.size() >= 2 && line[1] == '[') {
        fail(origin, line_no, "array-of-tables headers are not supported");
      }
      if (line.back() != ']') fail(origin, line_no, "malformed section header");
      const std::string path = trim(line.substr(1, line.size() - 2));
      Node* node = descend(&doc.root_, split_dotted(path, origin, line_no), origin, line_no);
      section = node;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(origin, line_no, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    std::string value_text = trim(line.substr(eq + 1));

    // multi-line arrays: keep appending lines until brackets balance
    auto bracket_balance = [](const std::string& s) {
      int depth = 0;
      bool in_string = false;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '"' && (i == 0 || s[i - 1] != '\\')) in_string = !in_string;
        if (in_string) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
      }
      return depth;
    };
    const int start_line = line_no;
    while (bracket_balance(value_text) > 0) {
      if (!std::getline(in, raw)) fail(origin, start_line, "unterminated multi-line array");
      ++line_no;
      value_text += ' ';
      value_text += trim(strip_comment(raw));
    }

    Node* leaf = descend(section, split_dotted(key, origin, start_line), origin, start_line);
    if (leaf->value.has_value() || !leaf->children.empty()) {
      fail(origin, start_line, "duplicate key '" + key + "'");
    }
    ValueParser parser{value_text, 0, origin, start_line};
    leaf->value = parser.parse();
    parser.skip_ws();
    if (parser.pos != value_text.size()) {
      fail(origin, start_line, "trailing characters after value");
    }
    leaf->line = start_line;
  }
  return doc;
}

const Node* Document::find(const std::string& dotted_path) const {
  const Node* node = &root_;
  std::string cur;
  std::istringstream parts(dotted_path);
  while (std::getline(parts, cur, '.')) {
    const auto it = node->children.find(cur);
    if (it == node->children.end()) return nullptr;
    node = &it->second;
  }
  return node;
}

std::vector<std::string> Document::untouched_leaves() const {
  std::vector<std::string> out;
  collect_untouched(root_, "", out);
  return out;
}

}  // namespace dsfo::tomllite
