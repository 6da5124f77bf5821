#include "kintwin/trajectory.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "kintwin/errors.hpp"
#include "text_io.hpp"

namespace kintwin {

using textio::format_double;
using textio::parse_double;
using textio::parse_long;
using textio::tokenize;

namespace {
const char* kHeader = "kintwin-traj v1";
}

void Trajectory::validate() {
    if (!(frame_rate > 0.0)) throw DataError("trajectory frame rate must be positive");
    if (frames() < 2) throw DataError("trajectory needs at least 2 frames");
    if (qvel.rows() != qpos.rows()) throw DataError("trajectory qpos/qvel frame counts differ");
    if (nv() != nq() - 1) throw DataError("trajectory must satisfy nv = nq - 1");
    if (nq() < 7) throw DataError("trajectory is missing the free root coordinates");
    if (!beta.all_positive()) throw DataError("trajectory beta must be positive");
    for (int t = 0; t < frames(); ++t) {
        for (int c = 0; c < nq(); ++c) {
            if (!std::isfinite(qpos(t, c)))
                throw DataError("non-finite qpos value in frame " + std::to_string(t));
        }
        for (int c = 0; c < nv(); ++c) {
            if (!std::isfinite(qvel(t, c)))
                throw DataError("non-finite qvel value in frame " + std::to_string(t));
        }
        const double norm = std::sqrt(qpos(t, 3) * qpos(t, 3) + qpos(t, 4) * qpos(t, 4) +
                                      qpos(t, 5) * qpos(t, 5) + qpos(t, 6) * qpos(t, 6));
        if (std::abs(norm - 1.0) > 1e-3)
            throw DataError("root quaternion in frame " + std::to_string(t) +
                            " deviates from unit norm by more than 1e-3");
        for (int k = 3; k < 7; ++k) qpos(t, k) /= norm;
    }
}

void Trajectory::check_model(const ModelSpec& model) const {
    if (nq() != model.nq || nv() != model.nv)
        throw DataError("trajectory dimensions (" + std::to_string(nq()) + "/" +
                        std::to_string(nv()) + ") do not match model '" + model.name + "' (" +
                        std::to_string(model.nq) + "/" + std::to_string(model.nv) + ")");
}

Trajectory parse_trajectory(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || (line != kHeader && line != std::string(kHeader) + "\r"))
        throw DataError(origin + ": missing '" + kHeader + "' header");

    Trajectory traj;
    long frames = -1;
    int lineno = 1;
    while (frames < 0 && std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(textio::strip_comment(line));
        if (toks.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno);
        if (toks[0] == "model" && toks.size() == 2) {
            traj.model_name = toks[1];
        } else if (toks[0] == "participant" && toks.size() == 2) {
            traj.participant = toks[1];
        } else if (toks[0] == "trial" && toks.size() == 2) {
            traj.trial = toks[1];
        } else if (toks[0] == "activity" && toks.size() == 2) {
            traj.activity = toks[1];
        } else if (toks[0] == "frame_rate" && toks.size() == 2) {
            traj.frame_rate = parse_double(toks[1], where);
        } else if (toks[0] == "beta" && toks.size() == 1 + ScaleParams::kCount) {
            for (int k = 0; k < ScaleParams::kCount; ++k)
                traj.beta[k] = parse_double(toks[1 + k], where);
        } else if (toks[0] == "coords") {
            traj.coord_names.assign(toks.begin() + 1, toks.end());
        } else if (toks[0] == "frames" && toks.size() == 2) {
            frames = parse_long(toks[1], where);
        } else {
            throw DataError(where + ": unexpected header line '" + toks[0] + "'");
        }
    }
    if (frames < 2) throw DataError(origin + ": missing or invalid 'frames' count");
    if (traj.coord_names.empty()) throw DataError(origin + ": missing 'coords' line");

    const int nq = static_cast<int>(traj.coord_names.size());
    const int nv = nq - 1;
    traj.qpos.resize(frames, nq);
    traj.qvel.resize(frames, nv);
    for (long t = 0; t < frames; ++t) {
        if (!std::getline(in, line))
            throw DataError(origin + ": expected " + std::to_string(frames) + " frames, got " +
                            std::to_string(t));
        ++lineno;
        auto toks = tokenize(line);
        const std::string where = origin + ":" + std::to_string(lineno);
        if (static_cast<int>(toks.size()) != 1 + nq + nv)
            throw DataError(where + ": frame row needs " + std::to_string(1 + nq + nv) +
                            " values, got " + std::to_string(toks.size()));
        for (int c = 0; c < nq; ++c) traj.qpos(t, c) = parse_double(toks[1 + c], where);
        for (int c = 0; c < nv; ++c) traj.qvel(t, c) = parse_double(toks[1 + nq + c], where);
    }
    traj.validate();
    return traj;
}

Trajectory load_trajectory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open trajectory file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_trajectory(ss.str(), path);
}

std::string serialize_trajectory(const Trajectory& traj) {
    std::ostringstream os;
    os << kHeader << "\n";
    os << "model " << traj.model_name << "\n";
    if (!traj.participant.empty()) os << "participant " << traj.participant << "\n";
    if (!traj.trial.empty()) os << "trial " << traj.trial << "\n";
    if (!traj.activity.empty()) os << "activity " << traj.activity << "\n";
    os << "frame_rate " << format_double(traj.frame_rate) << "\n";
    os << "beta";
    for (int k = 0; k < ScaleParams::kCount; ++k) os << " " << format_double(traj.beta[k]);
    os << "\ncoords";
    for (const std::string& n : traj.coord_names) os << " " << n;
    os << "\nframes " << traj.frames() << "\n";
    for (int t = 0; t < traj.frames(); ++t) {
        os << format_double(t / traj.frame_rate);
        for (int c = 0; c < traj.nq(); ++c) os << " " << format_double(traj.qpos(t, c));
        for (int c = 0; c < traj.nv(); ++c) os << " " << format_double(traj.qvel(t, c));
        os << "\n";
    }
    return os.str();
}

void save_trajectory(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write trajectory file: " + path);
    out << serialize_trajectory(traj);
}

Trajectory resample(const Trajectory& traj, double target_rate) {
    if (target_rate < traj.frame_rate)
        throw DataError("resample: downsampling requested (target below source rate)");
    if (target_rate == traj.frame_rate) return traj;

    const int src_frames = traj.frames();
    const double ratio = target_rate / traj.frame_rate;
    // number of target frames spanning the same duration
    const int out_frames = static_cast<int>(std::floor((src_frames - 1) * ratio + 1e-9)) + 1;

    Trajectory out = traj;
    out.frame_rate = target_rate;
    out.qpos.resize(out_frames, traj.nq());
    out.qvel.resize(out_frames, traj.nv());

    for (int t = 0; t < out_frames; ++t) {
        double src_pos = t / ratio;
        if (src_pos > src_frames - 1) src_pos = src_frames - 1;
        int i0 = static_cast<int>(std::floor(src_pos));
        if (i0 >= src_frames - 1) i0 = src_frames - 2;
        const int i1 = i0 + 1;
        double u = src_pos - i0;
        // land exactly on source frames when the ratio is integral
        if (u < 1e-9) u = 0.0;
        if (u > 1.0 - 1e-9) u = 1.0;

        if (u == 0.0) {
            out.qpos.row(t) = traj.qpos.row(i0);
            out.qvel.row(t) = traj.qvel.row(i0);
            continue;
        }
        if (u == 1.0) {
            out.qpos.row(t) = traj.qpos.row(i1);
            out.qvel.row(t) = traj.qvel.row(i1);
            continue;
        }
        out.qpos.row(t) = (1.0 - u) * traj.qpos.row(i0) + u * traj.qpos.row(i1);
        out.qvel.row(t) = (1.0 - u) * traj.qvel.row(i0) + u * traj.qvel.row(i1);
        const Quat q = traj.root_quat(i0).slerp(u, traj.root_quat(i1));
        out.qpos(t, 3) = q.w();
        out.qpos(t, 4) = q.x();
        out.qpos(t, 5) = q.y();
        out.qpos(t, 6) = q.z();
    }
    return out;
}

VelocityConsistency check_velocity_consistency(const Trajectory& traj) {
    VelocityConsistency result;
    const int joints = traj.nq() - 7;  // skip the root block
    if (joints <= 0 || traj.frames() < 3) return result;

    std::vector<double> errs;
    errs.reserve(traj.frames() - 1);
    for (int t = 0; t + 1 < traj.frames(); ++t) {
        double err = 0.0;
        for (int c = 0; c < joints; ++c) {
            const double fd = (traj.qpos(t + 1, 7 + c) - traj.qpos(t, 7 + c)) * traj.frame_rate;
            err += std::abs(fd - traj.qvel(t, 6 + c));
        }
        errs.push_back(err / joints);
    }
    std::vector<double> sorted = errs;
    std::sort(sorted.begin(), sorted.end());
    result.median_err = sorted[sorted.size() / 2];
    result.checked_frames = static_cast<int>(errs.size());
    if (result.median_err > 0.0) {
        for (double e : errs)
            if (e > 10.0 * result.median_err) ++result.outlier_frames;
    }
    return result;
}

}  // namespace kintwin
