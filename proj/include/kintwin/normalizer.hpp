#pragma once

#include "kintwin/math_utils.hpp"

namespace kintwin {

// Running mean/std over observations. Accumulates raw sums row by row so the
// statistics do not depend on how a stream of observations is split into
// batches.
class RunningNormalizer {
public:
    RunningNormalizer() = default;
    explicit RunningNormalizer(int dim)
        : count_(0.0), sum_(VecX::Zero(dim)), sumsq_(VecX::Zero(dim)) {}

    void update(const MatX& batch) {
        for (long r = 0; r < batch.rows(); ++r) {
            sum_ += batch.row(r).transpose();
            sumsq_ += batch.row(r).transpose().cwiseAbs2();
            count_ += 1.0;
        }
    }

    VecX mean() const {
        return count_ > 0.0 ? VecX(sum_ / count_) : VecX(VecX::Zero(sum_.size()));
    }

    VecX stddev() const {
        if (count_ <= 0.0) return VecX::Ones(sum_.size());
        VecX m = sum_ / count_;
        VecX var = (sumsq_ / count_ - m.cwiseAbs2()).cwiseMax(1e-8);
        return var.cwiseSqrt();
    }

    // normalize rows in place, clipped to +-clip
    void apply(MatX& batch, double clip = 10.0) const {
        if (count_ <= 0.0) return;
        const VecX m = mean();
        const VecX inv = stddev().cwiseInverse();
        for (long r = 0; r < batch.rows(); ++r) {
            batch.row(r) = ((batch.row(r).transpose() - m).cwiseProduct(inv))
                               .cwiseMax(-clip)
                               .cwiseMin(clip)
                               .transpose();
        }
    }

    VecX apply_one(const VecX& obs, double clip = 10.0) const {
        if (count_ <= 0.0) return obs;
        VecX out = (obs - mean()).cwiseProduct(stddev().cwiseInverse());
        return out.cwiseMax(-clip).cwiseMin(clip);
    }

    double count() const { return count_; }
    const VecX& sum() const { return sum_; }
    const VecX& sumsq() const { return sumsq_; }
    void restore(double count, VecX sum, VecX sumsq) {
        count_ = count;
        sum_ = std::move(sum);
        sumsq_ = std::move(sumsq);
    }

private:
    double count_ = 0.0;
    VecX sum_;
    VecX sumsq_;
};

}  // namespace kintwin
