#include "kintwin/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "kintwin/errors.hpp"
#include "text_io.hpp"

namespace kintwin {

SplitResult split_dataset(const std::vector<TrialRef>& trials, double ratio, Rng& rng) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw DataError("split ratio must be in (0, 1)");

    std::set<std::string> unique;
    for (const TrialRef& t : trials) {
        if (t.participant.empty()) throw DataError("trial '" + t.path + "' has no participant id");
        unique.insert(t.participant);
    }
    if (unique.size() < 2) throw DataError("need at least 2 participants to split");

    std::vector<std::string> participants(unique.begin(), unique.end());
    // Fisher-Yates on the sorted list keeps the split a pure function of the seed
    for (size_t i = participants.size() - 1; i > 0; --i) {
        const size_t j = static_cast<size_t>(rng.uniform_int(static_cast<int64_t>(i + 1)));
        std::swap(participants[i], participants[j]);
    }

    const auto p = static_cast<long>(participants.size());
    long n_train = std::lround(ratio * static_cast<double>(p));
    n_train = std::clamp(n_train, 1L, p - 1);

    std::set<std::string> train_set(participants.begin(), participants.begin() + n_train);
    SplitResult out;
    for (size_t i = 0; i < trials.size(); ++i) {
        if (train_set.count(trials[i].participant))
            out.train.push_back(static_cast<int>(i));
        else
            out.test.push_back(static_cast<int>(i));
    }
    return out;
}

void save_manifest(const std::string& path, const std::vector<TrialRef>& trials,
                   const std::vector<int>& indices) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write manifest: " + path);
    out << "kintwin-manifest v1\n";
    for (int i : indices) {
        const TrialRef& t = trials[i];
        out << t.path << " " << t.participant << " " << t.trial << " " << t.activity << " "
            << t.frames << "\n";
    }
}

std::vector<TrialRef> load_manifest(const std::string& path) {
    auto lines = textio::read_lines(path);
    if (lines.empty() || lines[0] != "kintwin-manifest v1")
        throw DataError(path + ": missing 'kintwin-manifest v1' header");
    std::vector<TrialRef> out;
    for (size_t i = 1; i < lines.size(); ++i) {
        auto toks = textio::tokenize(lines[i]);
        if (toks.empty()) continue;
        if (toks.size() != 5)
            throw DataError(path + ":" + std::to_string(i + 1) + ": manifest row needs 5 fields");
        TrialRef t;
        t.path = toks[0];
        t.participant = toks[1];
        t.trial = toks[2];
        t.activity = toks[3];
        t.frames = static_cast<int>(textio::parse_long(toks[4], path));
        out.push_back(t);
    }
    return out;
}

}  // namespace kintwin
