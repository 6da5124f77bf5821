#include "kintwin/builtin.hpp"

#include <cmath>

#include "kintwin/errors.hpp"

namespace kintwin {

namespace {

constexpr double kGravity = 9.81;

Mat3 rod_inertia(double mass, double length, double radius) {
    // solid cylinder along local z
    Mat3 I = Mat3::Zero();
    const double ixx = mass * (3.0 * radius * radius + length * length) / 12.0;
    I(0, 0) = ixx;
    I(1, 1) = ixx;
    I(2, 2) = 0.5 * mass * radius * radius;
    return I;
}

Mat3 box_inertia(double mass, double dx, double dy, double dz) {
    Mat3 I = Mat3::Zero();
    I(0, 0) = mass * (dy * dy + dz * dz) / 12.0;
    I(1, 1) = mass * (dx * dx + dz * dz) / 12.0;
    I(2, 2) = mass * (dx * dx + dy * dy) / 12.0;
    return I;
}

int add_body(ModelSpec& m, const std::string& name, int parent, double mass, const Vec3& com,
             const Mat3& inertia, const Vec3& attach) {
    BodySegment b;
    b.name = name;
    b.parent = parent;
    b.mass = mass;
    b.com = com;
    b.inertia = inertia;
    b.attach_pos = attach;
    m.bodies.push_back(b);
    return static_cast<int>(m.bodies.size()) - 1;
}

void add_free_root(ModelSpec& m) {
    Joint j;
    j.name = "root";
    j.type = JointType::Free;
    j.parent_body = -1;
    j.child_body = 0;
    m.joints.push_back(j);
}

int add_hinge(ModelSpec& m, const std::string& name, int parent, int child, const Vec3& axis,
              double lo, double hi) {
    Joint j;
    j.name = name;
    j.type = JointType::Hinge;
    j.parent_body = parent;
    j.child_body = child;
    j.axis = axis.normalized();
    j.lo = lo;
    j.hi = hi;
    j.limited = true;
    m.joints.push_back(j);
    return static_cast<int>(m.joints.size()) - 1;
}

void add_rfc(ModelSpec& m, double force_gear, double torque_gear) {
    static const char* names[6] = {"rfc_fx", "rfc_fy", "rfc_fz", "rfc_tx", "rfc_ty", "rfc_tz"};
    for (int c = 0; c < 6; ++c) {
        Actuator a;
        a.name = names[c];
        a.kind = ActuatorKind::Rfc;
        a.rfc_channel = c;
        a.gear = c < 3 ? force_gear : torque_gear;
        m.actuators.push_back(a);
    }
}

void add_torque(ModelSpec& m, const std::string& joint_name, double gear) {
    int j = m.find_joint(joint_name);
    if (j < 0) throw DataError("builtin model: unknown joint " + joint_name);
    Actuator a;
    a.name = joint_name + "_motor";
    a.kind = ActuatorKind::Torque;
    a.joint = j;
    a.gear = gear;
    m.actuators.push_back(a);
}

void add_contact(ModelSpec& m, const std::string& name, int body, char side, double radius,
                 const Vec3& offset) {
    ContactGeom g;
    g.name = name;
    g.body = body;
    g.side = side;
    g.radius = radius;
    g.offset = offset;
    m.contacts.push_back(g);
}

void set_group(ModelSpec& m, int group, const std::vector<int>& bodies) {
    m.scale_groups[group] = bodies;
}

}  // namespace

ModelSpec toy_biped_model() {
    ModelSpec m;
    m.name = "toy-biped";

    const int pelvis = add_body(m, "pelvis", -1, 30.0, Vec3(0, 0, 0.05),
                                box_inertia(30.0, 0.25, 0.32, 0.40), Vec3(0, 0, 0.88));
    const int l_thigh = add_body(m, "l_thigh", pelvis, 5.0, Vec3(0, 0, -0.2),
                                 rod_inertia(5.0, 0.40, 0.06), Vec3(0, 0.10, 0));
    const int l_shank = add_body(m, "l_shank", l_thigh, 2.0, Vec3(0, 0, -0.2),
                                 rod_inertia(2.0, 0.40, 0.04), Vec3(0, 0, -0.40));
    const int l_foot = add_body(m, "l_foot", l_shank, 0.5, Vec3(0.04, 0, -0.02),
                                box_inertia(0.5, 0.20, 0.08, 0.06), Vec3(0, 0, -0.40));
    const int r_thigh = add_body(m, "r_thigh", pelvis, 5.0, Vec3(0, 0, -0.2),
                                 rod_inertia(5.0, 0.40, 0.06), Vec3(0, -0.10, 0));
    const int r_shank = add_body(m, "r_shank", r_thigh, 2.0, Vec3(0, 0, -0.2),
                                 rod_inertia(2.0, 0.40, 0.04), Vec3(0, 0, -0.40));
    const int r_foot = add_body(m, "r_foot", r_shank, 0.5, Vec3(0.04, 0, -0.02),
                                box_inertia(0.5, 0.20, 0.08, 0.06), Vec3(0, 0, -0.40));

    add_free_root(m);
    const Vec3 y = Vec3::UnitY();
    add_hinge(m, "l_hip", pelvis, l_thigh, y, -1.6, 1.6);
    add_hinge(m, "l_knee", l_thigh, l_shank, y, -0.05, 2.4);
    add_hinge(m, "l_ankle", l_shank, l_foot, y, -1.0, 1.0);
    add_hinge(m, "r_hip", pelvis, r_thigh, y, -1.6, 1.6);
    add_hinge(m, "r_knee", r_thigh, r_shank, y, -0.05, 2.4);
    add_hinge(m, "r_ankle", r_shank, r_foot, y, -1.0, 1.0);

    const double weight = m.total_mass() * kGravity;
    add_rfc(m, 1.5 * weight, 0.5 * weight * 0.85);
    add_torque(m, "l_hip", 120.0);
    add_torque(m, "l_knee", 80.0);
    add_torque(m, "l_ankle", 40.0);
    add_torque(m, "r_hip", 120.0);
    add_torque(m, "r_knee", 80.0);
    add_torque(m, "r_ankle", 40.0);

    add_contact(m, "l_heel", l_foot, 'L', 0.04, Vec3(-0.05, 0, -0.04));
    add_contact(m, "l_toe", l_foot, 'L', 0.04, Vec3(0.13, 0, -0.04));
    add_contact(m, "r_heel", r_foot, 'R', 0.04, Vec3(-0.05, 0, -0.04));
    add_contact(m, "r_toe", r_foot, 'R', 0.04, Vec3(0.13, 0, -0.04));

    set_group(m, 1, {pelvis});
    set_group(m, 2, {l_thigh});
    set_group(m, 3, {l_shank, l_foot});
    set_group(m, 4, {r_thigh});
    set_group(m, 5, {r_shank, r_foot});

    m.finalize();
    m.validate();
    return m;
}

namespace {

// one leg's muscle routing, left side; y mirrors for the right side
struct MuscleDef {
    const char* name;
    double peak;                      // N
    const char* bodies[4];            // up to 4 via points, nullptr-terminated
    double pts[4][3];
};

// Approximate attachment sites. Origins/insertions give correct action signs
// (flexor paths run anterior to the joint they flex, extensors posterior).
const MuscleDef kLegMuscles[] = {
    {"glut_max1", 573, {"pelvis", "femur"}, {{-0.08, 0.05, 0.02}, {-0.03, 0.04, -0.10}}},
    {"glut_max2", 819, {"pelvis", "femur"}, {{-0.09, 0.04, -0.01}, {-0.03, 0.03, -0.14}}},
    {"glut_max3", 552, {"pelvis", "femur"}, {{-0.10, 0.03, -0.05}, {-0.02, 0.02, -0.18}}},
    {"glut_med1", 819, {"pelvis", "femur"}, {{-0.02, 0.08, 0.02}, {0.00, 0.05, -0.02}}},
    {"glut_med2", 573, {"pelvis", "femur"}, {{-0.05, 0.07, 0.02}, {-0.01, 0.05, -0.02}}},
    {"glut_med3", 653, {"pelvis", "femur"}, {{-0.07, 0.06, 0.01}, {-0.02, 0.05, -0.03}}},
    {"glut_min1", 270, {"pelvis", "femur"}, {{-0.01, 0.07, -0.01}, {0.00, 0.05, -0.01}}},
    {"glut_min2", 285, {"pelvis", "femur"}, {{-0.03, 0.07, -0.01}, {-0.01, 0.05, -0.01}}},
    {"glut_min3", 323, {"pelvis", "femur"}, {{-0.05, 0.06, -0.01}, {-0.01, 0.05, -0.02}}},
    {"iliacus", 1073, {"pelvis", "femur"}, {{0.03, 0.04, 0.01}, {0.00, 0.01, -0.06}}},
    {"psoas", 1113, {"pelvis", "femur"}, {{0.04, 0.03, 0.05}, {0.00, 0.01, -0.07}}},
    {"add_long", 627, {"pelvis", "femur"}, {{0.02, 0.01, -0.06}, {0.01, -0.01, -0.22}}},
    {"add_brev", 429, {"pelvis", "femur"}, {{0.00, 0.01, -0.07}, {0.00, -0.01, -0.12}}},
    {"add_mag1", 381, {"pelvis", "femur"}, {{-0.03, 0.02, -0.09}, {0.00, -0.01, -0.14}}},
    {"add_mag2", 343, {"pelvis", "femur"}, {{-0.04, 0.02, -0.09}, {0.00, -0.01, -0.24}}},
    {"add_mag3", 488, {"pelvis", "femur"}, {{-0.05, 0.02, -0.09}, {0.00, 0.00, -0.36}}},
    {"pect", 266, {"pelvis", "femur"}, {{0.02, 0.02, -0.05}, {0.00, 0.00, -0.10}}},
    {"grac", 162, {"pelvis", "tibia"}, {{0.00, 0.01, -0.08}, {0.01, 0.01, -0.06}}},
    {"tfl", 233, {"pelvis", "femur", "tibia"}, {{0.02, 0.07, 0.01}, {0.02, 0.06, -0.20}, {0.03, 0.03, -0.05}}},
    {"sar", 156, {"pelvis", "femur", "tibia"}, {{0.04, 0.06, 0.00}, {0.01, 0.02, -0.30}, {0.02, 0.01, -0.07}}},
    {"piri", 296, {"pelvis", "femur"}, {{-0.07, 0.02, 0.01}, {-0.01, 0.05, -0.01}}},
    {"gem", 164, {"pelvis", "femur"}, {{-0.07, 0.03, -0.04}, {-0.01, 0.04, -0.02}}},
    {"quad_fem", 254, {"pelvis", "femur"}, {{-0.07, 0.03, -0.06}, {-0.02, 0.03, -0.05}}},
    {"semimem", 1288, {"pelvis", "tibia"}, {{-0.07, 0.03, -0.07}, {-0.02, 0.01, -0.05}}},
    {"semiten", 410, {"pelvis", "tibia"}, {{-0.08, 0.03, -0.07}, {-0.01, 0.02, -0.07}}},
    {"bifemlh", 896, {"pelvis", "tibia"}, {{-0.08, 0.02, -0.07}, {-0.02, -0.02, -0.05}}},
    {"bifemsh", 804, {"femur", "tibia"}, {{-0.02, 0.02, -0.24}, {-0.02, -0.02, -0.05}}},
    {"rect_fem", 1169, {"pelvis", "femur", "tibia"}, {{0.04, 0.03, -0.02}, {0.05, 0.00, -0.38}, {0.04, 0.00, -0.06}}},
    {"vas_med", 1294, {"femur", "femur", "tibia"}, {{0.02, -0.01, -0.18}, {0.05, -0.01, -0.38}, {0.04, 0.00, -0.06}}},
    {"vas_int", 1365, {"femur", "femur", "tibia"}, {{0.03, 0.00, -0.14}, {0.05, 0.00, -0.38}, {0.04, 0.00, -0.06}}},
    {"vas_lat", 1871, {"femur", "femur", "tibia"}, {{0.02, 0.02, -0.16}, {0.05, 0.01, -0.38}, {0.04, 0.00, -0.06}}},
    {"med_gas", 1558, {"femur", "calcn"}, {{-0.02, -0.02, -0.38}, {-0.04, 0.00, 0.01}}},
    {"lat_gas", 683, {"femur", "calcn"}, {{-0.02, 0.02, -0.38}, {-0.04, 0.00, 0.01}}},
    {"soleus", 3549, {"tibia", "calcn"}, {{-0.02, 0.00, -0.13}, {-0.04, 0.00, 0.01}}},
    {"tib_post", 1588, {"tibia", "talus", "calcn"}, {{-0.02, 0.00, -0.14}, {-0.03, -0.02, -0.01}, {0.02, -0.02, 0.01}}},
    {"flex_dig", 310, {"tibia", "talus", "toes"}, {{-0.02, -0.01, -0.20}, {-0.03, -0.02, -0.02}, {0.02, -0.01, 0.00}}},
    {"flex_hal", 322, {"tibia", "talus", "toes"}, {{-0.02, 0.01, -0.23}, {-0.03, -0.02, -0.02}, {0.02, 0.01, 0.00}}},
    {"tib_ant", 905, {"tibia", "talus", "calcn"}, {{0.02, 0.01, -0.16}, {0.03, -0.01, 0.00}, {0.10, -0.01, 0.01}}},
    {"ext_dig", 512, {"tibia", "talus", "toes"}, {{0.02, 0.01, -0.14}, {0.03, 0.01, 0.00}, {0.03, 0.01, 0.01}}},
    {"ext_hal", 162, {"tibia", "talus", "toes"}, {{0.02, 0.00, -0.18}, {0.03, 0.00, 0.00}, {0.03, -0.01, 0.01}}},
    {"per_brev", 435, {"tibia", "calcn"}, {{-0.01, 0.03, -0.26}, {0.04, 0.03, 0.01}}},
    {"per_long", 943, {"tibia", "calcn"}, {{0.00, 0.03, -0.15}, {0.04, 0.03, 0.00}}},
    {"per_tert", 180, {"tibia", "calcn"}, {{0.01, 0.02, -0.28}, {0.08, 0.02, 0.01}}},
    {"ercspn", 2500, {"pelvis", "torso"}, {{-0.06, 0.04, 0.03}, {-0.05, 0.03, 0.15}}},
    {"intobl", 900, {"pelvis", "torso"}, {{0.03, 0.05, 0.03}, {0.05, 0.02, 0.12}}},
    {"extobl", 900, {"pelvis", "torso"}, {{0.05, 0.03, 0.02}, {0.02, 0.06, 0.14}}},
};

void add_leg_muscles(ModelSpec& m, char side) {
    const double ysign = side == 'l' ? 1.0 : -1.0;
    const std::string prefix(1, side);
    for (const MuscleDef& def : kLegMuscles) {
        Actuator a;
        a.name = prefix + "_" + def.name;
        a.kind = ActuatorKind::Muscle;
        a.lo = 0.0;
        a.hi = 1.0;
        a.gear = def.peak;
        a.vmax = 10.0;
        for (int p = 0; p < 4 && def.bodies[p]; ++p) {
            std::string body_name = def.bodies[p];
            if (body_name != "pelvis" && body_name != "torso")
                body_name = prefix + "_" + body_name;
            MuscleViaPoint vp;
            vp.body = m.find_body(body_name);
            if (vp.body < 0) throw DataError("builtin humanoid: unknown body " + body_name);
            vp.offset = Vec3(def.pts[p][0], ysign * def.pts[p][1], def.pts[p][2]);
            a.path.push_back(vp);
        }
        m.actuators.push_back(a);
    }
}

}  // namespace

ModelSpec humanoid_model(Actuation actuation) {
    ModelSpec m;
    m.name = actuation == Actuation::Torque ? "humanoid-torque" : "humanoid-muscle";

    const int pelvis = add_body(m, "pelvis", -1, 11.78, Vec3(-0.03, 0, 0.02),
                                box_inertia(11.78, 0.18, 0.28, 0.16), Vec3(0, 0, 0.95));
    const int torso = add_body(m, "torso", pelvis, 21.8, Vec3(0, 0, 0.20),
                               box_inertia(21.8, 0.20, 0.30, 0.45), Vec3(-0.02, 0, 0.12));
    const int head = add_body(m, "head", torso, 5.0, Vec3(0, 0, 0.08),
                              box_inertia(5.0, 0.15, 0.15, 0.20), Vec3(0.01, 0, 0.45));

    auto make_leg = [&](char side) {
        const double ys = side == 'l' ? 1.0 : -1.0;
        const std::string p(1, side);
        const int femur = add_body(m, p + "_femur", pelvis, 9.3, Vec3(0, 0, -0.17),
                                   rod_inertia(9.3, 0.40, 0.07), Vec3(-0.01, ys * 0.09, -0.06));
        const int tibia = add_body(m, p + "_tibia", femur, 3.7, Vec3(0, 0, -0.19),
                                   rod_inertia(3.7, 0.43, 0.05), Vec3(0, 0, -0.40));
        const int talus = add_body(m, p + "_talus", tibia, 0.10, Vec3(0, 0, 0),
                                   box_inertia(0.10, 0.05, 0.05, 0.05), Vec3(0, 0, -0.43));
        const int calcn = add_body(m, p + "_calcn", talus, 1.25, Vec3(0.09, 0, 0.01),
                                   box_inertia(1.25, 0.22, 0.08, 0.06), Vec3(-0.05, 0, -0.04));
        const int toes = add_body(m, p + "_toes", calcn, 0.22, Vec3(0.03, ys * -0.01, 0.005),
                                  box_inertia(0.22, 0.08, 0.07, 0.03), Vec3(0.18, ys * 0.001, 0));

        const Vec3 x = Vec3::UnitX(), y = Vec3::UnitY(), z = Vec3::UnitZ();
        add_hinge(m, p + "_hip_flexion", pelvis, femur, y, -2.1, 2.1);
        add_hinge(m, p + "_hip_adduction", pelvis, femur, x, -1.0, 1.0);
        add_hinge(m, p + "_hip_rotation", pelvis, femur, z, -1.2, 1.2);
        add_hinge(m, p + "_knee_angle", femur, tibia, y, -0.05, 2.8);
        add_hinge(m, p + "_ankle_angle", tibia, talus, y, -1.0, 1.0);
        add_hinge(m, p + "_subtalar_angle", talus, calcn, x, -0.6, 0.6);
        add_hinge(m, p + "_mtp_angle", calcn, toes, y, -0.5, 1.0);

        const char S = side == 'l' ? 'L' : 'R';
        add_contact(m, p + "_heel", calcn, S, 0.025, Vec3(-0.03, 0, 0.005));
        add_contact(m, p + "_forefoot", calcn, S, 0.025, Vec3(0.12, ys * 0.01, 0.005));
        add_contact(m, p + "_toe", toes, S, 0.023, Vec3(0.03, 0, 0.003));

        set_group(m, side == 'l' ? 2 : 4, {femur});
        set_group(m, side == 'l' ? 3 : 5, {tibia, talus, calcn, toes});
    };

    auto make_arm = [&](char side) {
        const double ys = side == 'l' ? 1.0 : -1.0;
        const std::string p(1, side);
        const int humerus = add_body(m, p + "_humerus", torso, 2.03, Vec3(0, 0, -0.16),
                                     rod_inertia(2.03, 0.33, 0.04), Vec3(0, ys * 0.19, 0.38));
        const int ulna = add_body(m, p + "_ulna", humerus, 0.61, Vec3(0, 0, -0.12),
                                  rod_inertia(0.61, 0.28, 0.03), Vec3(0.01, 0, -0.32));
        const int radius = add_body(m, p + "_radius", ulna, 0.61, Vec3(0, 0, -0.11),
                                    rod_inertia(0.61, 0.26, 0.03), Vec3(0.00, ys * 0.02, -0.02));
        const int hand = add_body(m, p + "_hand", radius, 0.46, Vec3(0, 0, -0.07),
                                  box_inertia(0.46, 0.08, 0.04, 0.16), Vec3(0, 0, -0.24));

        const Vec3 x = Vec3::UnitX(), y = Vec3::UnitY(), z = Vec3::UnitZ();
        add_hinge(m, p + "_shoulder_flexion", torso, humerus, y, -3.1, 3.1);
        add_hinge(m, p + "_shoulder_adduction", torso, humerus, x, -2.0, 2.0);
        add_hinge(m, p + "_shoulder_rotation", torso, humerus, z, -2.0, 2.0);
        add_hinge(m, p + "_elbow_flexion", humerus, ulna, y, -2.7, 0.05);
        add_hinge(m, p + "_pro_sup", ulna, radius, z, -1.6, 1.6);
        add_hinge(m, p + "_wrist_flexion", radius, hand, y, -1.2, 1.2);
        add_hinge(m, p + "_wrist_deviation", radius, hand, x, -0.5, 0.5);

        set_group(m, side == 'l' ? 6 : 7, {humerus, ulna, radius, hand});
    };

    add_free_root(m);
    const Vec3 x = Vec3::UnitX(), y = Vec3::UnitY(), z = Vec3::UnitZ();
    add_hinge(m, "lumbar_extension", pelvis, torso, y, -1.2, 0.8);
    add_hinge(m, "lumbar_bending", pelvis, torso, x, -0.8, 0.8);
    add_hinge(m, "lumbar_rotation", pelvis, torso, z, -0.8, 0.8);
    make_leg('l');
    make_leg('r');
    add_hinge(m, "neck_extension", torso, head, y, -1.0, 1.0);
    add_hinge(m, "neck_bending", torso, head, x, -0.8, 0.8);
    add_hinge(m, "neck_rotation", torso, head, z, -1.2, 1.2);
    make_arm('l');
    make_arm('r');

    set_group(m, 1, {pelvis});

    const double weight = m.total_mass() * kGravity;
    add_rfc(m, 1.5 * weight, 0.5 * weight * 0.92);

    auto torque_all = [&](const std::vector<std::pair<std::string, double>>& list) {
        for (const auto& [joint, gear] : list) add_torque(m, joint, gear);
    };
    torque_all({{"lumbar_extension", 150}, {"lumbar_bending", 150}, {"lumbar_rotation", 100},
                {"neck_extension", 20}, {"neck_bending", 20}, {"neck_rotation", 20}});
    if (actuation == Actuation::Torque) {
        for (char side : {'l', 'r'}) {
            const std::string p(1, side);
            torque_all({{p + "_hip_flexion", 180},
                        {p + "_hip_adduction", 120},
                        {p + "_hip_rotation", 90},
                        {p + "_knee_angle", 160},
                        {p + "_ankle_angle", 120},
                        {p + "_subtalar_angle", 60},
                        {p + "_mtp_angle", 25}});
        }
    }
    for (char side : {'l', 'r'}) {
        const std::string p(1, side);
        torque_all({{p + "_shoulder_flexion", 70},
                    {p + "_shoulder_adduction", 70},
                    {p + "_shoulder_rotation", 50},
                    {p + "_elbow_flexion", 60},
                    {p + "_pro_sup", 20},
                    {p + "_wrist_flexion", 15},
                    {p + "_wrist_deviation", 15}});
    }
    if (actuation == Actuation::Muscle) {
        add_leg_muscles(m, 'l');
        add_leg_muscles(m, 'r');
    }

    m.finalize();
    if (actuation == Actuation::Muscle) m = rescale_muscles(m);
    m.validate();
    return m;
}

ModelSpec point_mass_model() {
    ModelSpec m;
    m.name = "point-mass";
    add_body(m, "puck", -1, 1.0, Vec3::Zero(), 0.01 * Mat3::Identity(), Vec3(0, 0, 1.0));
    add_free_root(m);
    add_rfc(m, 3.0 * 1.0 * kGravity, 0.5);
    m.finalize();
    m.validate();
    return m;
}

ModelSpec pendulum_model(double mass, double length, bool point_mass) {
    ModelSpec m;
    m.name = "pendulum";
    Mat3 inertia;
    Vec3 com(0, 0, -length / 2.0);
    if (point_mass) {
        // all mass at the tip; tiny rotational inertia keeps the matrix SPD
        com = Vec3(0, 0, -length);
        inertia = 1e-8 * Mat3::Identity();
    } else {
        inertia = rod_inertia(mass, length, 1e-3);
    }
    add_body(m, "rod", -1, mass, com, inertia, Vec3(0, 0, 0));
    add_hinge(m, "pivot", -1, 0, Vec3::UnitY(), -10.0, 10.0);
    m.joints[0].limited = false;
    m.finalize();
    return m;
}

// --- scripted trajectories ---

namespace {

Trajectory make_traj_shell(const ModelSpec& model, int frames, double frame_rate,
                           const std::string& participant, const std::string& trial,
                           const std::string& activity) {
    Trajectory t;
    t.model_name = model.name;
    t.participant = participant;
    t.trial = trial;
    t.activity = activity;
    t.frame_rate = frame_rate;
    t.coord_names = {"root_x", "root_y", "root_z", "root_qw", "root_qx", "root_qy", "root_qz"};
    for (size_t j = 1; j < model.joints.size(); ++j) t.coord_names.push_back(model.joints[j].name);
    t.qpos = MatX::Zero(frames, model.nq);
    t.qvel = MatX::Zero(frames, model.nv);
    for (int f = 0; f < frames; ++f) t.qpos(f, 3) = 1.0;  // identity quaternions
    return t;
}

void set_joint(Trajectory& t, const ModelSpec& model, int frame, const std::string& joint,
               double value, double rate) {
    const int j = model.find_joint(joint);
    if (j < 0) throw DataError("scripted trajectory: unknown joint " + joint);
    t.qpos(frame, model.joint_qpos[j]) = value;
    t.qvel(frame, model.joint_dof[j]) = rate;
}

}  // namespace

Trajectory scripted_biped_gait(const ModelSpec& model, double duration_s, double frame_rate,
                               double phase, double forward_speed,
                               const std::string& participant, const std::string& trial) {
    const int frames = static_cast<int>(std::lround(duration_s * frame_rate)) + 1;
    Trajectory t = make_traj_shell(model, frames, frame_rate, participant, trial, "gait");

    const double f = 0.9;  // stride cycles per second
    const double w = 2.0 * M_PI * f;
    const double hip_amp = 0.35, knee_amp = 0.55, ankle_amp = 0.12;

    for (int k = 0; k < frames; ++k) {
        const double time = k / frame_rate;
        const double ph = w * time + phase;

        t.qpos(k, 0) = forward_speed * time;
        t.qvel(k, 0) = forward_speed;
        t.qpos(k, 1) = 0.02 * std::sin(ph);
        t.qvel(k, 1) = 0.02 * w * std::cos(ph);
        t.qpos(k, 2) = 0.86 + 0.015 * std::sin(2.0 * ph);
        t.qvel(k, 2) = 0.015 * 2.0 * w * std::cos(2.0 * ph);

        for (int side = 0; side < 2; ++side) {
            const double sp = ph + side * M_PI;
            const std::string p = side == 0 ? "l" : "r";
            set_joint(t, model, k, p + "_hip", hip_amp * std::sin(sp),
                      hip_amp * w * std::cos(sp));
            // knee flexes during the half cycle when this leg swings
            const double s = std::sin(sp + 0.9);
            const double spos = std::max(0.0, s);
            const double srate = s > 0.0 ? w * std::cos(sp + 0.9) : 0.0;
            set_joint(t, model, k, p + "_knee", knee_amp * spos * spos,
                      2.0 * knee_amp * spos * srate);
            set_joint(t, model, k, p + "_ankle", ankle_amp * std::sin(sp + M_PI / 2),
                      ankle_amp * w * std::cos(sp + M_PI / 2));
        }
    }
    t.validate();
    return t;
}

Trajectory scripted_humanoid_walk(const ModelSpec& model, double duration_s, double frame_rate,
                                  double phase, const std::string& participant,
                                  const std::string& trial) {
    const int frames = static_cast<int>(std::lround(duration_s * frame_rate)) + 1;
    Trajectory t = make_traj_shell(model, frames, frame_rate, participant, trial, "walk");

    const double f = 0.95;
    const double w = 2.0 * M_PI * f;
    const double speed = 1.1;

    for (int k = 0; k < frames; ++k) {
        const double time = k / frame_rate;
        const double ph = w * time + phase;

        t.qpos(k, 0) = speed * time;
        t.qvel(k, 0) = speed;
        t.qpos(k, 1) = 0.02 * std::sin(ph);
        t.qvel(k, 1) = 0.02 * w * std::cos(ph);
        t.qpos(k, 2) = 0.94 + 0.012 * std::sin(2.0 * ph);
        t.qvel(k, 2) = 0.012 * 2.0 * w * std::cos(2.0 * ph);

        set_joint(t, model, k, "lumbar_rotation", 0.05 * std::sin(ph), 0.05 * w * std::cos(ph));
        for (int side = 0; side < 2; ++side) {
            const double sp = ph + side * M_PI;
            const std::string p = side == 0 ? "l" : "r";
            set_joint(t, model, k, p + "_hip_flexion", 0.4 * std::sin(sp), 0.4 * w * std::cos(sp));
            const double s = std::max(0.0, std::sin(sp + 0.9));
            const double srate = std::sin(sp + 0.9) > 0.0 ? w * std::cos(sp + 0.9) : 0.0;
            set_joint(t, model, k, p + "_knee_angle", 0.6 * s * s, 1.2 * s * srate);
            set_joint(t, model, k, p + "_ankle_angle", 0.15 * std::sin(sp + M_PI / 2),
                      0.15 * w * std::cos(sp + M_PI / 2));
            // arms swing against the legs
            set_joint(t, model, k, p + "_shoulder_flexion", -0.25 * std::sin(sp),
                      -0.25 * w * std::cos(sp));
            set_joint(t, model, k, p + "_elbow_flexion", -0.3 - 0.1 * std::sin(sp),
                      -0.1 * w * std::cos(sp));
        }
    }
    t.validate();
    return t;
}

Trajectory scripted_puck_course(const ModelSpec& model, double duration_s, double frame_rate,
                                double phase, const std::string& participant,
                                const std::string& trial) {
    const int frames = static_cast<int>(std::lround(duration_s * frame_rate)) + 1;
    Trajectory t = make_traj_shell(model, frames, frame_rate, participant, trial, "course");

    const double w1 = 2.0 * M_PI * 0.45, w2 = 2.0 * M_PI * 0.3, w3 = 2.0 * M_PI * 0.8;
    for (int k = 0; k < frames; ++k) {
        const double time = k / frame_rate;
        t.qpos(k, 0) = 0.6 * std::sin(w1 * time + phase) + 0.2 * std::sin(w3 * time + 1.3 + phase);
        t.qvel(k, 0) =
            0.6 * w1 * std::cos(w1 * time + phase) + 0.2 * w3 * std::cos(w3 * time + 1.3 + phase);
        t.qpos(k, 1) = 0.5 * std::sin(w2 * time + 0.7 + phase);
        t.qvel(k, 1) = 0.5 * w2 * std::cos(w2 * time + 0.7 + phase);
        t.qpos(k, 2) = 1.0;
    }
    t.validate();
    return t;
}

Trajectory scripted_biped_float(const ModelSpec& model, double duration_s, double frame_rate,
                                const std::string& participant, const std::string& trial) {
    const int frames = static_cast<int>(std::lround(duration_s * frame_rate)) + 1;
    Trajectory t = make_traj_shell(model, frames, frame_rate, participant, trial, "float");
    for (int k = 0; k < frames; ++k) {
        t.qpos(k, 2) = 0.9;
        // legs tucked so no foot reaches the floor
        set_joint(t, model, k, "l_hip", -1.1, 0.0);
        set_joint(t, model, k, "r_hip", -1.1, 0.0);
        set_joint(t, model, k, "l_knee", 1.8, 0.0);
        set_joint(t, model, k, "r_knee", 1.8, 0.0);
    }
    t.validate();
    return t;
}

}  // namespace kintwin
