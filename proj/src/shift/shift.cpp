#include "voxshift/shift/shift.hpp"

#include "voxshift/errors.hpp"
#include "voxshift/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

namespace voxshift::shift {

namespace {

struct ColumnKey {
    int x;
    int z;
    friend auto operator<=>(const ColumnKey&, const ColumnKey&) = default;
};

class GenIndex {
public:
    explicit GenIndex(std::span<const LocatedMetrics> gen) : gen_(gen), used_(gen.size(), false) {
        for (std::size_t i = 0; i < gen.size(); ++i) {
            const auto& h = gen[i].location.head;
            columns_[{h.x, h.z}].push_back(i);
        }
    }

    std::optional<std::size_t> same_column(const Coord& head) const {
        const auto it = columns_.find({head.x, head.z});
        if (it == columns_.end()) return std::nullopt;
        std::optional<std::size_t> best;
        for (auto i : it->second) {
            if (used_[i]) continue;
            if (!best || better_vertical(head, gen_[i].location.head, gen_[*best].location.head)) best = i;
        }
        return best;
    }

    std::optional<std::size_t> nearest_within(const Coord& head, double radius) const {
        const int r = static_cast<int>(std::floor(radius));
        const double r2 = radius * radius;
        std::optional<std::size_t> best;
        std::int64_t best_d2 = 0;
        for (int dz = -r; dz <= r; ++dz) {
            for (int dx = -r; dx <= r; ++dx) {
                const auto it = columns_.find({head.x + dx, head.z + dz});
                if (it == columns_.end()) continue;
                for (auto i : it->second) {
                    if (used_[i]) continue;
                    const auto& g = gen_[i].location.head;
                    const auto d2 = dist2(head, g);
                    if (static_cast<double>(d2) > r2) continue;
                    if (!best || d2 < best_d2 || (d2 == best_d2 && yzx_less(g, gen_[*best].location.head))) {
                        best = i;
                        best_d2 = d2;
                    }
                }
            }
        }
        return best;
    }

    void take(std::size_t i) { used_[i] = true; }

private:
    static bool better_vertical(const Coord& head, const Coord& a, const Coord& b) {
        const int da = std::abs(a.y - head.y);
        const int db = std::abs(b.y - head.y);
        return da < db || (da == db && a.y < b.y);
    }

    std::span<const LocatedMetrics> gen_;
    std::vector<bool> used_;
    std::map<ColumnKey, std::vector<std::size_t>> columns_;
};

bool ranks_before(const ShiftRecord& a, const ShiftRecord& b) {
    if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
    return yzx_less(a.pair.base_head, b.pair.base_head);
}

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out += buf;
}

} // namespace

PairingResult pair_locations(std::span<const LocatedMetrics> base, std::span<const LocatedMetrics> gen,
                             double fraction, double match_radius, std::uint64_t seed) {
    if (base.empty() || gen.empty()) throw InvalidArgument("pairing needs non-empty base and generated records");
    if (!(match_radius >= 0.0) || !std::isfinite(match_radius)) {
        throw InvalidArgument("match radius must be a finite value >= 0");
    }
    PairingResult result;
    result.sampled = sample_size(fraction, base.size());

    Rng rng(derive_seed(seed, 0x7061697273ULL));
    std::vector<const LocatedMetrics*> samples;
    for (auto i : sample_indices(base.size(), result.sampled, rng)) samples.push_back(&base[i]);
    std::stable_sort(samples.begin(), samples.end(), [](const LocatedMetrics* a, const LocatedMetrics* b) {
        return yzx_less(a->location.head, b->location.head);
    });

    GenIndex index(gen);
    for (const auto* s : samples) {
        const auto& head = s->location.head;
        auto match = index.same_column(head);
        if (!match && match_radius > 0.0) match = index.nearest_within(head, match_radius);
        if (!match) {
            ++result.dropped;
            continue;
        }
        index.take(*match);
        result.pairs.push_back({head, gen[*match].location.head, s->metrics, gen[*match].metrics});
    }
    return result;
}

std::vector<ShiftRecord> compute_shift(std::span<const LocationPair> pairs, const pca::PcaModel& model) {
    if (model.components() < 2) throw InvalidArgument("shift needs a model with at least 2 components");
    std::vector<ShiftRecord> out;
    out.reserve(pairs.size());
    for (const auto& p : pairs) {
        const auto pre = pca::project(model, p.base_metrics.as_row());
        const auto post = pca::project(model, p.gen_metrics.as_row());
        ShiftRecord r;
        r.pair = p;
        r.pre = {pre[0], pre[1]};
        r.post = {post[0], post[1]};
        r.delta = {post[0] - pre[0], post[1] - pre[1]};
        r.magnitude = std::sqrt(r.delta.x * r.delta.x + r.delta.y * r.delta.y);
        out.push_back(r);
    }
    return out;
}

std::vector<ShiftRecord> top_k_shifts(std::span<const ShiftRecord> records, std::size_t k) {
    if (k == 0) throw InvalidArgument("top-k needs k >= 1");
    std::vector<ShiftRecord> out(records.begin(), records.end());
    const auto keep = std::min(k, out.size());
    std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), ranks_before);
    out.resize(keep);
    return out;
}

ShiftSummary shift_summary(std::span<const ShiftRecord> records, std::size_t dropped) {
    if (records.empty()) throw InvalidArgument("shift summary needs at least one record");
    ShiftSummary s;
    s.count = records.size();
    s.dropped = dropped;
    std::vector<double> mags;
    mags.reserve(records.size());
    double sum = 0.0;
    for (const auto& r : records) {
        mags.push_back(r.magnitude);
        sum += r.magnitude;
        s.mean_delta.x += r.delta.x;
        s.mean_delta.y += r.delta.y;
        s.max_magnitude = std::max(s.max_magnitude, r.magnitude);
    }
    const auto n = static_cast<double>(records.size());
    s.mean_magnitude = sum / n;
    s.mean_delta.x /= n;
    s.mean_delta.y /= n;
    std::sort(mags.begin(), mags.end());
    const auto mid = mags.size() / 2;
    s.median_magnitude = mags.size() % 2 == 1 ? mags[mid] : 0.5 * (mags[mid - 1] + mags[mid]);
    return s;
}

std::string format_shift_csv(std::span<const ShiftRecord> records) {
    std::string out =
        "base_x,base_y,base_z,gen_x,gen_y,gen_z,pre_pc1,pre_pc2,post_pc1,post_pc2,delta_pc1,delta_pc2,magnitude\n";
    for (const auto& r : records) {
        const auto& b = r.pair.base_head;
        const auto& g = r.pair.gen_head;
        out += std::to_string(b.x) + ',' + std::to_string(b.y) + ',' + std::to_string(b.z) + ',' +
               std::to_string(g.x) + ',' + std::to_string(g.y) + ',' + std::to_string(g.z);
        for (double v : {r.pre.x, r.pre.y, r.post.x, r.post.y, r.delta.x, r.delta.y, r.magnitude}) {
            out += ',';
            append_number(out, v);
        }
        out += '\n';
    }
    return out;
}

std::string format_summary(const ShiftSummary& s) {
    std::string out;
    const auto line = [&out](const char* key, double v) {
        out += key;
        out += ": ";
        append_number(out, v);
        out += '\n';
    };
    out += "count: " + std::to_string(s.count) + '\n';
    out += "dropped: " + std::to_string(s.dropped) + '\n';
    line("mean_magnitude", s.mean_magnitude);
    line("median_magnitude", s.median_magnitude);
    line("max_magnitude", s.max_magnitude);
    line("mean_delta_pc1", s.mean_delta.x);
    line("mean_delta_pc2", s.mean_delta.y);
    return out;
}

} // namespace voxshift::shift
