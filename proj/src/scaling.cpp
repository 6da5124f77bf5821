#include "kintwin/kinematics.hpp"
#include "kintwin/model.hpp"

#include "kintwin/errors.hpp"

namespace kintwin {

ModelSpec apply_scaling(const ModelSpec& model, const ScaleParams& beta,
                        const ScalingOptions& opts) {
    if (!beta.all_positive()) throw DataError("scale parameters must all be positive");

    ModelSpec out = model;
    const double old_mass = model.total_mass();

    std::vector<double> factor(model.num_bodies());
    for (int b = 0; b < model.num_bodies(); ++b) factor[b] = model.body_scale(b, beta);

    for (int b = 0; b < out.num_bodies(); ++b) {
        BodySegment& seg = out.bodies[b];
        const double s = factor[b];
        seg.com *= s;
        if (opts.scale_mass) {
            const double s3 = s * s * s;
            seg.mass *= s3;
            seg.inertia *= s3 * s * s;  // mass * length^2
        } else {
            seg.inertia *= s * s;
        }
        // the offset to a child is a length of this (parent) segment
        if (seg.parent >= 0) seg.attach_pos *= factor[seg.parent];
    }

    for (ContactGeom& g : out.contacts) {
        g.offset *= factor[g.body];
        g.radius *= factor[g.body];
    }

    for (Actuator& a : out.actuators) {
        if (a.kind == ActuatorKind::Muscle) {
            for (MuscleViaPoint& vp : a.path) vp.offset *= factor[vp.body];
        }
    }

    // RFC strength tracks scaled body weight (and overall length for torque).
    const double mass_ratio = out.total_mass() / old_mass;
    for (Actuator& a : out.actuators) {
        if (a.kind != ActuatorKind::Rfc) continue;
        if (a.rfc_channel < 3)
            a.gear *= mass_ratio;
        else
            a.gear *= mass_ratio * beta.overall();
    }

    out.finalize();
    return out;
}

ModelSpec rescale_muscles(const ModelSpec& model) {
    if (!model.has_muscles()) throw DataError("rescale_muscles: model has no muscle actuators");
    ModelSpec out = model;
    KinCache kin;
    forward_kinematics(out, out.neutral_pose, VecX(), kin);
    for (Actuator& a : out.actuators) {
        if (a.kind != ActuatorKind::Muscle) continue;
        if (a.path.size() < 2) throw DataError("muscle '" + a.name + "' has fewer than 2 via points");
        a.rest_length = muscle_path_length(out, kin, a);
    }
    return out;
}

ModelSpec scale_model(const ModelSpec& model, const ScaleParams& beta,
                      const ScalingOptions& opts) {
    ModelSpec out = apply_scaling(model, beta, opts);
    if (out.has_muscles()) out = rescale_muscles(out);
    return out;
}

}  // namespace kintwin
