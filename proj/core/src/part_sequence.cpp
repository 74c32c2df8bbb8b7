#include "limlaw/part_sequence.hpp"

#include <cctype>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include "limlaw/errors.hpp"

namespace limlaw {

PartSequence::PartSequence(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("part sequence must be non-empty");
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("parts must be positive");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

PartSequence PartSequence::parse(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  if (compact.empty()) throw InputError("empty structure literal");

  std::vector<int> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = compact.find(',', start);
    const std::string_view field =
        std::string_view(compact).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
      throw InputError("bad part '" + std::string(field) + "' in structure literal '" +
                       std::string(text) + "'");
    }
    if (value < 1) {
      throw InputError("parts must be positive in structure literal '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return PartSequence(std::move(parts));
}

std::vector<int> PartSequence::class_of_points() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::size_t c = 0; c < parts_.size(); ++c) out.insert(out.end(), parts_[c], static_cast<int>(c));
  return out;
}

std::string PartSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

namespace {

void extend_shapes(int remaining, std::vector<int>& prefix, std::vector<PartSequence>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  for (int p = 1; p <= remaining; ++p) {
    prefix.push_back(p);
    extend_shapes(remaining - p, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<PartSequence> all_shapes(int n) {
  if (n < 1) throw std::invalid_argument("shapes need at least one point");
  std::vector<PartSequence> out;
  out.reserve(std::size_t{1} << (n - 1));
  std::vector<int> prefix;
  extend_shapes(n, prefix, out);
  return out;
}

}  // namespace limlaw
