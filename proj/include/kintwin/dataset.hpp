#pragma once

#include <string>
#include <vector>

#include "kintwin/rng.hpp"
#include "kintwin/trajectory.hpp"

namespace kintwin {

struct TrialRef {
    std::string path;
    std::string participant;
    std::string trial;
    std::string activity;
    int frames = 0;
};

struct SplitResult {
    std::vector<int> train;  // indices into the trial list
    std::vector<int> test;
};

// Participant-level partition: no participant appears in both splits. ratio is
// the training fraction; at least one participant lands on each side.
SplitResult split_dataset(const std::vector<TrialRef>& trials, double ratio, Rng& rng);

void save_manifest(const std::string& path, const std::vector<TrialRef>& trials,
                   const std::vector<int>& indices);
std::vector<TrialRef> load_manifest(const std::string& path);

}  // namespace kintwin
