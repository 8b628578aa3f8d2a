#include "minorsep/invariants.hpp"

#include <algorithm>

namespace minorsep {
namespace {

// Unsigned 512-bit accumulator; only products of 64-bit factors are needed.
class Wide {
 public:
  explicit Wide(std::uint64_t x = 1) { limb_[0] = x; }
  Wide& operator*=(std::uint64_t m) {
    u128 carry = 0;
    for (auto& l : limb_) {
      const u128 p = u128{l} * m + carry;
      l = static_cast<std::uint64_t>(p);
      carry = p >> 64;
    }
    return *this;
  }
  friend bool operator<=(const Wide& a, const Wide& b) {
    for (std::size_t i = a.limb_.size(); i-- > 0;) {
      if (a.limb_[i] != b.limb_[i]) return a.limb_[i] < b.limb_[i];
    }
    return true;
  }

 private:
  std::array<std::uint64_t, 8> limb_{};
};

Wide product(std::initializer_list<std::uint64_t> factors) {
  Wide w;
  for (std::uint64_t f : factors) w *= f;
  return w;
}

struct Ratio {
  std::uint64_t part = 0;   // |T_i(v)|
  std::uint64_t whole = 1;  // |V(T_i)|
};

bool greater(const Ratio& a, const Ratio& b) { return u128{a.part} * b.whole > u128{b.part} * a.whole; }

}  // namespace

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skipped: return "n/a";
    case CheckStatus::Unverifiable: return "unverifiable";
  }
  return "?";
}

bool InvariantReport::all_pass() const {
  for (const auto& it : iterations) {
    for (CheckStatus s : it.status) {
      if (s == CheckStatus::Fail || s == CheckStatus::Unverifiable) return false;
    }
  }
  return true;
}

std::size_t InvariantReport::first_failure(int which) const {
  for (const auto& it : iterations) {
    if (it.status[which - 1] == CheckStatus::Fail) return it.t;
  }
  return 0;
}

InvariantReport check_invariants(const RunTrace& trace) {
  const std::size_t n = trace.n;
  const ConstantsProfile& p = trace.profile;
  const std::uint64_t w_init = p.w_init;
  const std::uint64_t num = p.numerator(trace.h);
  const std::uint64_t slack = p.slack_denominator(trace.h);
  InvariantReport report;

  // Prefix maxima of membership ratios per vertex, over trees seen so far.
  std::vector<Ratio> best1(n, Ratio{0, 1}), best2(n, Ratio{0, 1});
  std::size_t tree_index = 0;

  for (std::size_t idx = 0; idx < trace.iterations.size(); ++idx) {
    const IterationRecord& rec = trace.iterations[idx];
    IterationCheck row;
    row.t = rec.t;
    auto fail = [&](int which, std::string why) {
      if (row.status[which - 1] != CheckStatus::Fail) {
        row.status[which - 1] = CheckStatus::Fail;
        row.detail[which - 1] = std::move(why);
      }
    };
    row.status.fill(CheckStatus::Pass);

    // Invariant 3.
    const u128 cap = (u128{w_init} + u128{num + 1} * (rec.t - 1)) * n;
    if (rec.total_weight > cap) fail(3, "W_t = " + std::to_string(rec.total_weight) + " > " + to_string(cap));
    if (!rec.weights.empty()) {
      u128 sum = 0;
      for (std::uint64_t x : rec.weights) sum += x;
      if (sum != rec.total_weight) fail(3, "W_t does not match the stored weights");
      if (weight_checksum(rec.weights) != rec.weight_checksum) fail(3, "weight checksum mismatch");
    }

    // Invariant 5.
    if (rec.weights.size() != n) {
      row.status[4] = CheckStatus::Unverifiable;
      row.detail[4] = "no weight snapshot";
    } else {
      for (Vertex v = 0; v < n; ++v) {
        if (rec.weights[v] < w_init) {
          fail(5, "w_t(" + std::to_string(v) + ") = " + std::to_string(rec.weights[v]) + " < w_init");
          break;
        }
      }
    }

    if (rec.root == kNoVertex) {
      for (int i : {0, 1, 3}) row.status[i] = CheckStatus::Skipped;
      report.iterations.push_back(std::move(row));
      continue;
    }

    // Invariant 4.
    std::size_t tree_size = rec.tree_size;
    if (tree_index < trace.trees.size() && trace.trees[tree_index].size() != tree_size) {
      fail(4, "recorded |V(T_t)| disagrees with the stored tree");
    }
    if (u128{tree_size} * slack < u128{n} * slack - n) {
      fail(4, "|V(T_t)| = " + std::to_string(tree_size) + " below (1 - 1/(10k)) n");
    }

    // Invariants 1 and 2 against w_{t+1}.
    const std::vector<std::uint64_t>* next = nullptr;
    if (idx + 1 < trace.iterations.size()) {
      next = &trace.iterations[idx + 1].weights;
    } else {
      next = &trace.final_weights;
    }
    if (tree_index >= trace.trees.size() || next->size() != n) {
      row.status[0] = row.status[1] = CheckStatus::Unverifiable;
      row.detail[0] = row.detail[1] = "trace lacks trees or w_{t+1}";
      // Ratios of later trees are unknown too, so the prefix maxima stop being exact.
      report.iterations.push_back(std::move(row));
      ++tree_index;
      best1.assign(0, {});
      continue;
    }
    if (best1.size() != n) {
      row.status[0] = row.status[1] = CheckStatus::Unverifiable;
      row.detail[0] = row.detail[1] = "an earlier tree was missing";
      report.iterations.push_back(std::move(row));
      ++tree_index;
      continue;
    }
    const WTree& tree = trace.trees[tree_index++];
    const std::uint64_t whole = tree.size();
    for (Vertex v = 0; v < n; ++v) {
      if (!tree.contains(v)) continue;
      const Ratio r{tree.subtree_size[v], whole};
      if (greater(r, best1[v])) {
        best2[v] = best1[v];
        best1[v] = r;
      } else if (greater(r, best2[v])) {
        best2[v] = r;
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      const std::uint64_t w = (*next)[v];
      const Ratio& a = best1[v];
      const Ratio& b = best2[v];
      if (row.status[0] == CheckStatus::Pass && a.part > 0) {
        // (|T_i(v)| w_init num)^2 n <= (2 w |V(T_i)|)^2
        if (!(product({a.part, w_init, num, a.part, w_init, num, n}) <= product({2, w, a.whole, 2, w, a.whole}))) {
          fail(1, "vertex " + std::to_string(v) + " ratio " + std::to_string(a.part) + "/" + std::to_string(a.whole) +
                      " exceeds the bound for w = " + std::to_string(w));
        }
      }
      if (row.status[1] == CheckStatus::Pass && b.part > 0) {
        // |T_i(v)||T_j(v)| w_init num^2 n <= 4 w |V(T_i)||V(T_j)|
        if (!(product({a.part, b.part, w_init, num, num, n}) <= product({4, w, a.whole, b.whole}))) {
          fail(2, "vertex " + std::to_string(v) + " ratio product exceeds the bound for w = " + std::to_string(w));
        }
      }
    }
    report.iterations.push_back(std::move(row));
  }
  return report;
}

}  // namespace minorsep
