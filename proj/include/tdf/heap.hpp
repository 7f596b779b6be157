#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "tdf/graph.hpp"

namespace tdf {

/// Addressable 4-ary min-heap over vertices, keyed by (score, vertex id).
class ScoredHeap {
public:
  using Score = std::int64_t;

  explicit ScoredHeap(Vertex n) : slot_(static_cast<std::size_t>(n), kAbsent) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(Vertex v) const { return slot_[v] != kAbsent; }
  Score key(Vertex v) const {
    assert(contains(v));
    return heap_[slot_[v]].key;
  }
  Vertex top() const { return heap_.front().v; }

  void push(Vertex v, Score key) {
    assert(!contains(v));
    heap_.push_back({key, v});
    sift_up(heap_.size() - 1);
  }

  Vertex pop() {
    Vertex v = heap_.front().v;
    Entry last = heap_.back();
    heap_.pop_back();
    slot_[v] = kAbsent;
    if (!heap_.empty()) {
      heap_[0] = last;
      sift_down(0);
    }
    return v;
  }

  /// Re-keys v in place; both directions are supported.
  void update(Vertex v, Score key) {
    assert(contains(v));
    std::size_t i = slot_[v];
    Score old = heap_[i].key;
    heap_[i].key = key;
    if (key < old)
      sift_up(i);
    else if (key > old)
      sift_down(i);
  }

private:
  static constexpr std::size_t kArity = 4;
  static constexpr std::uint32_t kAbsent = static_cast<std::uint32_t>(-1);

  struct Entry {
    Score key;
    Vertex v;
    bool operator<(const Entry& o) const { return key != o.key ? key < o.key : v < o.v; }
  };

  void place(std::size_t i, Entry e) {
    heap_[i] = e;
    slot_[e.v] = static_cast<std::uint32_t>(i);
  }

  void sift_up(std::size_t i) {
    Entry e = heap_[i];
    while (i > 0) {
      std::size_t p = (i - 1) / kArity;
      if (!(e < heap_[p])) break;
      place(i, heap_[p]);
      i = p;
    }
    place(i, e);
  }

  void sift_down(std::size_t i) {
    Entry e = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      const std::size_t first = kArity * i + 1;
      if (first >= n) break;
      std::size_t c = first;
      const std::size_t last = std::min(first + kArity, n);
      for (std::size_t k = first + 1; k < last; ++k)
        if (heap_[k] < heap_[c]) c = k;
      if (!(heap_[c] < e)) break;
      place(i, heap_[c]);
      i = c;
    }
    place(i, e);
  }

  std::vector<Entry> heap_;
  std::vector<std::uint32_t> slot_;
};

}  // namespace tdf
