#include "travelkit/bench/normalize.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <stdexcept>

namespace travelkit::bench {
namespace {

const icu::Normalizer2& nfkc_casefold() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKCCasefoldInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU NFKC_Casefold unavailable");
  return *n;
}

icu::UnicodeString one_pass(const icu::UnicodeString& in) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString folded = nfkc_casefold().normalize(in, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

  icu::UnicodeString out;
  bool pending_space = false;
  for (int32_t i = 0; i < folded.length();) {
    const UChar32 c = folded.char32At(i);
    i += U16_LENGTH(c);
    const bool space = u_isUWhiteSpace(c) || u_ispunct(c) || u_iscntrl(c) ||
                       u_charType(c) == U_FORMAT_CHAR;
    if (space) {
      pending_space = true;
      continue;
    }
    if (pending_space && out.length() > 0) out.append(static_cast<UChar>(u' '));
    pending_space = false;
    out.append(c);
  }
  return out;
}

}  // namespace

std::string normalize_text(std::string_view s) {
  icu::UnicodeString current =
      icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  // Removing characters can expose new compositions; iterate to a fixed point.
  for (int i = 0; i < 8; ++i) {
    icu::UnicodeString next = one_pass(current);
    if (next == current) break;
    current = std::move(next);
  }
  std::string out;
  current.toUTF8String(out);
  return out;
}

std::vector<std::string> normalized_tokens(std::string_view s) {
  const std::string norm = normalize_text(s);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < norm.size()) {
    auto end = norm.find(' ', start);
    if (end == std::string::npos) end = norm.size();
    if (end > start) out.push_back(norm.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace travelkit::bench
