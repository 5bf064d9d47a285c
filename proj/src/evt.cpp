#include "aevt/evt.hpp"

#include "aevt/errors.hpp"

#include <algorithm>
#include <thread>

namespace aevt {

namespace {

struct Best {
    bool set = false;
    Rational value;
    std::size_t index = 0;
    PWLFunction member;

    void offer(const Rational& v, std::size_t i, const PWLFunction& f) {
        if (!set || v < value || (v == value && i < index)) {
            set = true;
            value = v;
            index = i;
            member = f;
        }
    }
};

class BatchEvaluator {
public:
    BatchEvaluator(const Functional& J, std::uint64_t probe, unsigned workers)
        : J_(J), probe_(probe), workers_(std::max(1u, workers)) {}

    void push(PWLFunction f) {
        batch_.push_back(std::move(f));
        if (batch_.size() >= 4096) flush();
    }

    void flush() {
        if (batch_.empty()) return;
        const std::size_t n = batch_.size();
        const unsigned w = static_cast<unsigned>(std::min<std::size_t>(workers_, n));
        std::vector<Best> local(w);
        auto run = [&](unsigned t) {
            for (std::size_t i = t; i < n; i += w) local[t].offer(J_.eval(batch_[i])(probe_), base_ + i, batch_[i]);
        };
        if (w == 1) {
            run(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < w; ++t) pool.emplace_back(run, t);
            for (auto& th : pool) th.join();
        }
        for (auto& b : local)
            if (b.set) best_.offer(b.value, b.index, b.member);
        base_ += n;
        batch_.clear();
    }

    const Best& best() const { return best_; }
    std::size_t seen() const { return base_ + batch_.size(); }

private:
    const Functional& J_;
    std::uint64_t probe_;
    unsigned workers_;
    std::vector<PWLFunction> batch_;
    std::size_t base_ = 0;
    Best best_;
};

} // namespace

Rational search_precision(const Functional& J, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    Rational eps = J.exact_values ? Rational(1) / Rational(k) : Rational(3) / Rational(4 * k);
    return J.modulus(eps);
}

ExtremumResult approx_inf(const Functional& J, const LipschitzSpaceDesc& space, std::uint64_t k, std::uint64_t cap,
                          unsigned workers) {
    ExtremumResult r;
    r.k = k;
    r.net_precision = search_precision(J, k);
    BatchEvaluator ev(J, 8 * k, workers);
    if (space.codomain_dim == 1) {
        r.params = choose_net_params(space, r.net_precision);
        auto grid = std::make_shared<const PointList>(
            r.params.k_grid == 0 ? PointList{space.domain.center}
                                 : regular_partition(space.domain, r.params.k_grid).points);
        if (auto exact = exact_scalar_count(space, r.params); exact && *exact > mpz_class(static_cast<unsigned long>(cap)))
            throw CapExceeded("search net has exactly " + exact->get_str() + " members, cap " + std::to_string(cap),
                              exact->get_str());
        const std::size_t N = grid->size();
        std::vector<Rational> levels(2 * r.params.k_val + 1);
        for (std::size_t j = 0; j < levels.size(); ++j) levels[j] = -space.bound + Rational(j) * r.params.level_step;
        for_each_scalar_member(space, r.params, *grid, cap, [&](const std::vector<std::uint16_t>& lv) {
            std::vector<Rational> values(N);
            for (std::size_t p = 0; p < N; ++p) values[p] = levels[lv[p]];
            ev.push(PWLFunction::trusted(grid, std::move(values), space.lip, space.bound, 1));
        });
    } else {
        FunctionNet net = enumerate_net(space, r.net_precision, cap);
        r.params = net.params();
        for (std::size_t i = 0; i < net.size(); ++i) ev.push(net.member(i));
    }
    ev.flush();
    r.net_size = ev.seen();
    r.member = ev.best().member;
    r.value = ev.best().value;
    r.member_index = ev.best().index;
    return r;
}

Functional negate(const Functional& J) {
    Functional n = J;
    n.eval = [e = J.eval](const PWLFunction& f) { return neg(e(f)); };
    return n;
}

ExtremumResult approx_sup(const Functional& J, const LipschitzSpaceDesc& space, std::uint64_t k, std::uint64_t cap,
                          unsigned workers) {
    ExtremumResult r = approx_inf(negate(J), space, k, cap, workers);
    r.value = -r.value;
    return r;
}

Rational approx_sup_over_points(const ScalarField& g, const PointList& pts) {
    if (pts.empty()) throw EmptySet("sup over an empty set");
    Rational best = g(pts.front());
    for (std::size_t i = 1; i < pts.size(); ++i) best = max(best, g(pts[i]));
    return best;
}

Rational approx_sup_over_set(const ScalarField& g, const BoxSpace& U, const Modulus& omega, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("k must be >= 1");
    Rational delta = omega(Rational(1) / Rational(2 * k));
    std::uint64_t kk = std::max<std::uint64_t>(1, ceil_nat(Rational(1) / delta));
    return approx_sup_over_points(g, finite_approximation(U, kk).points);
}

Modulus sup_modulus(const Modulus& omega) {
    std::optional<Rational> lip;
    if (omega.lip) lip = *omega.lip * 3;
    return {[omega](const Rational& e) { return omega(e / 3); }, lip};
}

} // namespace aevt
