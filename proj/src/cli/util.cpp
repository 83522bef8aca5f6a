// SPDX-License-Identifier: Apache-2.0
#include <openssl/evp.h>

#include <charconv>
#include <sstream>

#include "fqzeta/cli.hpp"

namespace fqz::cli {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\r\n";
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return os.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw InternalError("sha256: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

// nlohmann::json objects are key-sorted, so dump() is canonical.
std::string content_hash(const Json& j) { return sha256_hex(j.dump()); }

Json to_json(const ValSeries& x) {
  Json j = {{"place", x.place()->describe()}, {"abs_prec", x.abs_prec()}};
  if (x.is_zero()) {
    j["zero"] = true;
    return j;
  }
  j["val"] = x.val();
  j["prec"] = x.prec();
  if (x.place()->is_infinite()) {
    // Digits of the pi-adic expansion from pi^val upward.
    Json d = Json::array();
    for (std::int64_t i = 0; i < x.prec(); ++i) d.push_back(x.place()->field()->digits(x.unit()[static_cast<std::size_t>(i)]));
    j["digits"] = d;
  } else {
    j["unit"] = fqz::to_json(x.unit());
  }
  return j;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  auto num = [&](std::string_view t) {
    while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
    while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || p != t.data() + t.size())
      throw DomainError("parse_int_list: bad integer '" + std::string(t) + "'");
    return v;
  };
  std::string_view rest = s;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.find_first_not_of(' ') == std::string_view::npos) continue;
    const auto dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(num(item));
      continue;
    }
    const std::int64_t a = num(item.substr(0, dots)), b = num(item.substr(dots + 2));
    if (b < a) throw DomainError("parse_int_list: empty range '" + std::string(item) + "'");
    if (b - a > 10'000'000) throw DomainError("parse_int_list: range too long");
    for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
  }
  return out;
}

}  // namespace fqz::cli
