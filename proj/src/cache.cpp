#include "kauffman/cache.hpp"

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <cctype>
#include <fstream>
#include <json.hpp>

#include "kauffman/errors.hpp"

namespace kauffman {

namespace bi = boost::archive::iterators;

std::string base64_encode(const std::string& bytes) {
  using It = bi::base64_from_binary<bi::transform_width<std::string::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::string base64_decode(const std::string& text) {
  std::size_t pad = 0;
  while (pad < text.size() && pad < 2 && text[text.size() - 1 - pad] == '=') ++pad;
  for (char c : text.substr(0, text.size() - pad))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '/')
      throw Error(ErrorKind::CacheCorrupt, "bad base64 character");
  if (text.size() % 4 != 0) throw Error(ErrorKind::CacheCorrupt, "bad base64 length");
  std::string body = text.substr(0, text.size() - pad) + std::string(pad, 'A');
  using It = bi::transform_width<bi::binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::string out(It(body.begin()), It(body.end()));
  out.resize(out.size() - pad);
  return out;
}

EvalCache EvalCache::load(const std::string& path) {
  EvalCache c;
  std::ifstream in(path);
  if (!in) return c;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      c.map_[base64_decode(j.at("signature").get<std::string>())] =
          parse_ring(j.at("value").get<std::string>());
    } catch (const std::exception& e) {
      throw Error(ErrorKind::CacheCorrupt, path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return c;
}

void EvalCache::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(ErrorKind::Range, "cannot write cache " + path);
  for (const auto& [sig, v] : map_)
    out << nlohmann::json{{"signature", base64_encode(sig)}, {"value", v.to_text()}}.dump() << '\n';
}

std::optional<RingElem> EvalCache::lookup(const std::string& sig) const {
  auto it = map_.find(sig);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

void EvalCache::seed(MemoTable& m) const {
  for (const auto& [sig, v] : map_)
    if (sig.rfind(kDiagram, 0) != 0) m.insert(sig, v, false);
}

void EvalCache::absorb(const MemoTable& m) {
  for (auto& [sig, v] : m.entries()) map_[sig] = v;
}

std::size_t EvalCache::verify_against(const MemoTable& m) const {
  std::size_t n = 0;
  for (const auto& [sig, v] : m.entries()) {
    auto it = map_.find(sig);
    if (it == map_.end()) continue;
    ++n;
    if (!(it->second == v))
      throw Error(ErrorKind::CacheCorrupt, "cached value differs for " + base64_encode(sig));
  }
  return n;
}

}  // namespace kauffman
