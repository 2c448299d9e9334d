#include "json_source.hpp"

#include <algorithm>
#include <iterator>
#include <memory>
#include <vector>

namespace scalarkit::cli {

std::string Position::to_string() const {
  if (line == 0) return "unknown position";
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Position SourceMap::at(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    auto it = positions_.find(p);
    if (it != positions_.end()) return it->second;
    if (p.empty()) return {};
    p.erase(p.rfind('/'));
  }
}

std::string pointer_child(const std::string& parent, const std::string& key) {
  std::string out = parent + "/";
  for (char c : key) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string pointer_child(const std::string& parent, std::size_t index) {
  return parent + "/" + std::to_string(index);
}

namespace {

// Forward iterator over the text that counts how many bytes the lexer has
// consumed; the counter is shared because the parser copies the iterator.
class CountingIterator {
 public:
  using iterator_category = std::input_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator(const char* p, std::size_t* consumed) : p_(p), consumed_(consumed) {}
  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    ++*consumed_;
    return *this;
  }
  CountingIterator operator++(int) {
    CountingIterator old = *this;
    ++*this;
    return old;
  }
  bool operator==(const CountingIterator& o) const { return p_ == o.p_; }
  bool operator!=(const CountingIterator& o) const { return p_ != o.p_; }

 private:
  const char* p_;
  std::size_t* consumed_;
};

class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    starts_.push_back(0);
    for (std::size_t i = 0; i < text.size(); ++i)
      if (text[i] == '\n') starts_.push_back(i + 1);
  }
  Position at(std::size_t offset) const {
    auto it = std::upper_bound(starts_.begin(), starts_.end(), offset);
    std::size_t line = static_cast<std::size_t>(it - starts_.begin());
    return {line, offset - starts_[line - 1] + 1};
  }

 private:
  std::vector<std::size_t> starts_;
};

bool is_scalar_char(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '.' || c == '+' ||
         c == '-';
}

class Builder : public nlohmann::json_sax<Json> {
 public:
  Builder(const std::string& text, const std::size_t* consumed)
      : text_(text), consumed_(consumed), lines_(text) {}

  bool null() override { return place(nullptr, scalar_start()); }
  bool boolean(bool v) override { return place(v, scalar_start()); }
  bool number_integer(number_integer_t v) override { return place(v, scalar_start()); }
  bool number_unsigned(number_unsigned_t v) override { return place(v, scalar_start()); }
  bool number_float(number_float_t v, const string_t&) override { return place(v, scalar_start()); }
  bool string(string_t& v) override { return place(v, string_start()); }
  bool binary(binary_t&) override { return false; }

  bool start_object(std::size_t) override { return open(Json::object()); }
  bool end_object() override { return close(); }
  bool start_array(std::size_t) override { return open(Json::array()); }
  bool end_array() override { return close(); }

  bool key(string_t& k) override {
    Frame& f = stack_.back();
    if (f.node->contains(k)) throw JsonSyntaxError("duplicate object key '" + k + "'", lines_.at(string_start()));
    f.key = k;
    return true;
  }

  bool parse_error(std::size_t byte, const std::string&, const nlohmann::detail::exception& ex) override {
    std::string what = ex.what();
    auto colon = what.find("syntax error");
    if (colon != std::string::npos) what = what.substr(colon);
    throw JsonSyntaxError(what, lines_.at(byte == 0 ? 0 : byte - 1));
  }

  ParsedJson result() { return {std::move(root_), std::move(map_)}; }

 private:
  struct Frame {
    Json* node;
    std::string pointer;
    std::string key;
  };

  // The lexer has read past the token, plus one byte after numbers.
  std::size_t scalar_start() const {
    std::size_t end = std::min(*consumed_, text_.size());
    while (end > 0 && !is_scalar_char(text_[end - 1])) --end;
    std::size_t start = end;
    while (start > 0 && is_scalar_char(text_[start - 1])) --start;
    return start;
  }

  std::size_t string_start() const {
    std::size_t end = std::min(*consumed_, text_.size());
    while (end > 0 && text_[end - 1] != '"') --end;
    std::size_t i = end - 1;  // closing quote
    while (i > 0) {
      --i;
      if (text_[i] != '"') continue;
      std::size_t slashes = 0;
      for (std::size_t j = i; j > 0 && text_[j - 1] == '\\'; --j) ++slashes;
      if (slashes % 2 == 0) return i;
    }
    return 0;
  }

  bool place(Json value, std::size_t start) {
    insert(std::move(value), start);
    return true;
  }

  Json* insert(Json value, std::size_t start) {
    if (stack_.empty()) {
      root_ = std::move(value);
      map_.set("", lines_.at(start));
      return &root_;
    }
    Frame& f = stack_.back();
    std::string pointer;
    Json* slot;
    if (f.node->is_array()) {
      pointer = pointer_child(f.pointer, f.node->size());
      f.node->push_back(std::move(value));
      slot = &f.node->back();
    } else {
      pointer = pointer_child(f.pointer, f.key);
      (*f.node)[f.key] = std::move(value);
      slot = &(*f.node)[f.key];
    }
    map_.set(pointer, lines_.at(start));
    last_pointer_ = pointer;
    return slot;
  }

  bool open(Json container) {
    std::size_t start = *consumed_ == 0 ? 0 : *consumed_ - 1;
    bool nested = !stack_.empty();
    Json* slot = insert(std::move(container), start);
    std::string pointer = nested ? last_pointer_ : "";
    stack_.push_back({slot, pointer, {}});
    return true;
  }

  bool close() {
    stack_.pop_back();
    return true;
  }

  const std::string& text_;
  const std::size_t* consumed_;
  LineIndex lines_;
  Json root_;
  SourceMap map_;
  std::vector<Frame> stack_;
  std::string last_pointer_;
};

}  // namespace

ParsedJson parse_json_with_positions(const std::string& text) {
  std::size_t consumed = 0;
  Builder builder(text, &consumed);
  CountingIterator first(text.data(), &consumed);
  CountingIterator last(text.data() + text.size(), &consumed);
  Json::sax_parse(first, last, &builder);
  return builder.result();
}

}  // namespace scalarkit::cli
