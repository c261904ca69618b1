#include "hsgw/summary.hpp"

#include "hsgw/error.hpp"

#include <algorithm>

namespace hsgw {

void StrahlerStream::reset()
{
    stack_.clear();
    stats_ = {};
    complete_ = stopped_ = false;
}

bool StrahlerStream::push(std::int64_t degree)
{
    if (finished()) throw ParameterError("StrahlerStream: push after the tree finished");
    if (degree < 0) throw ParameterError("StrahlerStream: negative out-degree");
    const std::int64_t depth = stack_.empty() ? 0 : stack_.back().depth + 1;
    ++stats_.size;
    stats_.height = std::max(stats_.height, depth);
    stats_.max_degree = std::max(stats_.max_degree, degree);
    if (degree == 0)
        finish_child(0, 0);
    else
        stack_.push_back({degree, depth, -1, 0, 0});
    return finished();
}

void StrahlerStream::finish_child(int s, std::int64_t z)
{
    while (true) {
        if (stack_.empty()) {
            stats_.strahler = s;
            stats_.z = z;
            complete_ = true;
            return;
        }
        Frame& f = stack_.back();
        if (s > f.best) {
            f.best = s;
            f.count = 1;
            f.z_best = z;
        } else if (s == f.best) {
            ++f.count;
        }
        if (stop_above_ && (s > *stop_above_ || (f.best == *stop_above_ && f.count >= 2))) stopped_ = true;
        if (--f.remaining > 0) return;
        const bool bump = f.count >= 2;
        s = bump ? f.best + 1 : f.best;
        z = bump ? 0 : f.z_best + 1;
        stack_.pop_back();
        if (stopped_) {
            // keep unwinding so the prefix value stays available
            stats_.strahler = std::max(stats_.strahler, s);
        }
    }
}

int StrahlerStream::prefix_strahler() const
{
    if (complete_) return stats_.strahler;
    int carry = -1;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
        int best = it->best, count = it->count;
        if (carry > best) {
            best = carry;
            count = 1;
        } else if (carry >= 0 && carry == best) {
            ++count;
        }
        carry = best < 0 ? 0 : (count >= 2 ? best + 1 : best);
    }
    return std::max(carry, stats_.strahler);
}

TreeStats StrahlerStream::stats() const
{
    TreeStats s = stats_;
    if (!complete_) {
        s.strahler = prefix_strahler();
        s.z = 0;
    }
    return s;
}

TreeStats tree_stats(const Tree& t)
{
    StrahlerStream stream;
    for (Tree::Index u = 0; u < t.size(); ++u) stream.push(static_cast<std::int64_t>(t.degree(u)));
    return stream.stats();
}

} // namespace hsgw
