#pragma once

// Minimal XML reader for checking exported GEXF: enough to verify
// well-formedness of the subset we emit (declaration, nested elements,
// attributes, entity escapes) and to walk the element tree.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace xml_lite {

struct Element {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::vector<Element> children;
  std::string text;

  const Element* first(const std::string& child_name) const {
    for (const auto& c : children)
      if (c.name == child_name)
        return &c;
    return nullptr;
  }
  std::vector<const Element*> all(const std::string& child_name) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
      if (c.name == child_name)
        out.push_back(&c);
    return out;
  }
  std::string attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? std::string() : it->second;
  }
};

class Parser {
public:
  explicit Parser(const std::string& text) : text_(text) {}

  Element parse() {
    skip_ws();
    if (peek_starts("<?")) { // declaration
      std::size_t end = text_.find("?>", pos_);
      if (end == std::string::npos)
        fail("unterminated declaration");
      pos_ = end + 2;
    }
    skip_ws();
    Element root = element();
    skip_ws();
    if (pos_ != text_.size())
      fail("trailing content after root element");
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw std::runtime_error("xml error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\t' || text_[pos_] == '\r'))
      ++pos_;
  }
  bool peek_starts(const char* prefix) const {
    return text_.compare(pos_, std::string::traits_type::length(prefix), prefix) == 0;
  }
  std::string name_token() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == ':' || text_[pos_] == '-' || text_[pos_] == '.'))
      ++pos_;
    if (pos_ == start)
      fail("expected name");
    return text_.substr(start, pos_ - start);
  }
  std::string unescape(const std::string& raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] != '&') {
        out.push_back(raw[i++]);
        continue;
      }
      std::size_t semi = raw.find(';', i);
      if (semi == std::string::npos)
        fail("bare & in content");
      std::string entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "amp")
        out.push_back('&');
      else if (entity == "lt")
        out.push_back('<');
      else if (entity == "gt")
        out.push_back('>');
      else if (entity == "quot")
        out.push_back('"');
      else if (entity == "apos")
        out.push_back('\'');
      else
        fail("unknown entity: " + entity);
      i = semi + 1;
    }
    return out;
  }
  Element element() {
    if (pos_ >= text_.size() || text_[pos_] != '<')
      fail("expected element");
    ++pos_;
    Element el;
    el.name = name_token();
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size())
        fail("unterminated tag");
      if (text_[pos_] == '/') {
        if (pos_ + 1 >= text_.size() || text_[pos_ + 1] != '>')
          fail("malformed self-closing tag");
        pos_ += 2;
        return el;
      }
      if (text_[pos_] == '>') {
        ++pos_;
        break;
      }
      std::string key = name_token();
      if (pos_ >= text_.size() || text_[pos_] != '=')
        fail("expected = after attribute name");
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '"')
        fail("expected quoted attribute value");
      ++pos_;
      std::size_t end = text_.find('"', pos_);
      if (end == std::string::npos)
        fail("unterminated attribute value");
      std::string raw = text_.substr(pos_, end - pos_);
      if (raw.find('<') != std::string::npos)
        fail("< in attribute value");
      if (!el.attrs.emplace(key, unescape(raw)).second)
        fail("duplicate attribute: " + key);
      pos_ = end + 1;
    }
    // children and text until the closing tag
    for (;;) {
      std::size_t lt = text_.find('<', pos_);
      if (lt == std::string::npos)
        fail("missing closing tag for " + el.name);
      std::string raw_text = text_.substr(pos_, lt - pos_);
      if (raw_text.find_first_not_of(" \n\t\r") != std::string::npos)
        el.text += unescape(raw_text);
      pos_ = lt;
      if (peek_starts("</")) {
        pos_ += 2;
        std::string closing = name_token();
        if (closing != el.name)
          fail("mismatched closing tag: expected " + el.name + ", got " + closing);
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != '>')
          fail("malformed closing tag");
        ++pos_;
        return el;
      }
      el.children.push_back(element());
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

inline Element parse(const std::string& text) { return Parser(text).parse(); }

} // namespace xml_lite
