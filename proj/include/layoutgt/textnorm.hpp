#pragma once

#include <string>
#include <string_view>

namespace layoutgt {

// Code-point string in Unicode NFKD with canonical whitespace: no leading or
// trailing whitespace and no run of more than one U+0020. Only normalize_kd
// creates non-empty values, so every NormString is a fixed point of it.
class NormString {
 public:
  NormString() = default;

  const std::u32string& chars() const noexcept { return value_; }
  std::u32string_view view() const noexcept { return value_; }
  std::size_t size() const noexcept { return value_.size(); }
  bool empty() const noexcept { return value_.empty(); }
  std::string utf8() const;

  friend bool operator==(const NormString&, const NormString&) = default;

 private:
  explicit NormString(std::u32string value) : value_(std::move(value)) {}
  friend NormString normalize_kd(std::u32string_view);

  std::u32string value_;
};

// NFKD, then whitespace runs collapsed to one space and trimmed. Invalid UTF-8
// sequences become U+FFFD before normalization. Case is preserved.
NormString normalize_kd(std::string_view utf8);
NormString normalize_kd(std::u32string_view text);

std::u32string utf8_to_u32(std::string_view utf8);
std::string u32_to_utf8(std::u32string_view text);

// Unicode White_Space property.
bool is_unicode_space(char32_t c) noexcept;

}  // namespace layoutgt
