#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

namespace flockherd::util {

inline unsigned default_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Splits [0, n) into `workers` contiguous ranges and runs fn(worker, lo, hi)
// on each, in parallel.  Callers are responsible for merging results in a
// worker-count-independent way.
template <class Fn>
void parallel_ranges(std::uint64_t n, unsigned workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    fn(0u, std::uint64_t{0}, n);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = n * w / workers;
    const std::uint64_t hi = n * (w + 1) / workers;
    threads.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : threads) t.join();
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return 0;
  std::uint64_t h = 0xcbf29ce484222325ull;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    h = fnv1a64(buf, static_cast<std::size_t>(in.gcount()), h);
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Peak resident set size of this process in kilobytes (VmHWM), or 0 if
// unavailable.
inline long peak_rss_kb() {
  std::ifstream in("/proc/self/status");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("VmHWM:", 0) == 0) {
      long kb = 0;
      std::sscanf(line.c_str() + 6, "%ld", &kb);
      return kb;
    }
  }
  return 0;
}

}  // namespace flockherd::util
