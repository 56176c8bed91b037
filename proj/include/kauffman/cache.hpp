#pragma once

// Persistent evaluation cache: JSON lines {"signature": base64, "value": text}.

#include <optional>
#include <string>
#include <unordered_map>

#include "kauffman/ring.hpp"
#include "kauffman/skein.hpp"

namespace kauffman {

class EvalCache {
 public:
  /// A missing file is an empty cache; a malformed line throws CacheCorrupt.
  static EvalCache load(const std::string& path);
  void save(const std::string& path) const;

  std::optional<RingElem> lookup(const std::string& sig) const;
  void store(const std::string& sig, const RingElem& v) { map_[sig] = v; }
  std::size_t size() const { return map_.size(); }

  /// Whole-diagram results, keyed by the diagram's own signature.
  std::optional<RingElem> lookup_diagram(const std::string& sig) const { return lookup(kDiagram + sig); }
  void store_diagram(const std::string& sig, const RingElem& v) { store(kDiagram + sig, v); }

  /// Copies every graph entry into the engine's memo.
  void seed(MemoTable& m) const;
  /// Takes over the engine's memo entries.
  void absorb(const MemoTable& m);
  /// Compares cached entries against freshly computed memo entries;
  /// returns the number checked, throws CacheCorrupt on a mismatch.
  std::size_t verify_against(const MemoTable& m) const;

 private:
  static constexpr const char* kDiagram = "diagram:";
  std::unordered_map<std::string, RingElem> map_;
};

std::string base64_encode(const std::string& bytes);
std::string base64_decode(const std::string& text);

}  // namespace kauffman
