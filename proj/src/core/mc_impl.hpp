#pragma once

#include "parallel.hpp"

namespace levymult {

template <class Stats, class PerPath>
Stats run_paths(std::size_t paths, std::size_t chunk, PerPath&& per_path) {
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = (paths + chunk - 1) / chunk;
  std::vector<Stats> partial(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * chunk, end = std::min(paths, begin + chunk);
    for (std::size_t i = begin; i < end; ++i) per_path(i, partial[c]);
  });
  Stats total;
  for (const Stats& s : partial) total.merge(s);
  return total;
}

}  // namespace levymult
