#include "kintwin/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "kintwin/errors.hpp"
#include "text_io.hpp"

namespace kintwin {

using textio::format_double;
using textio::parse_double;
using textio::strip_comment;
using textio::tokenize;

namespace {

const char* kHeader = "kintwin-model v1";

int resolve_body(const ModelSpec& model, const std::string& name, const std::string& where) {
    int idx = model.find_body(name);
    if (idx < 0) throw DataError(where + ": unknown body '" + name + "'");
    return idx;
}

int rfc_channel_from_name(const std::string& tok, const std::string& where) {
    static const std::map<std::string, int> chans = {
        {"fx", 0}, {"fy", 1}, {"fz", 2}, {"tx", 3}, {"ty", 4}, {"tz", 5}};
    auto it = chans.find(tok);
    if (it == chans.end()) throw DataError(where + ": bad rfc channel '" + tok + "'");
    return it->second;
}

const char* rfc_channel_name(int c) {
    static const char* names[6] = {"fx", "fy", "fz", "tx", "ty", "tz"};
    return names[c];
}

MuscleViaPoint parse_via_point(const ModelSpec& model, const std::string& tok,
                               const std::string& where) {
    size_t colon = tok.find(':');
    if (colon == std::string::npos)
        throw DataError(where + ": via point must be body:x,y,z, got '" + tok + "'");
    MuscleViaPoint vp;
    vp.body = resolve_body(model, tok.substr(0, colon), where);
    std::string coords = tok.substr(colon + 1);
    std::stringstream ss(coords);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) throw DataError(where + ": via point has more than 3 coordinates");
        vp.offset[i++] = parse_double(part, where);
    }
    if (i != 3) throw DataError(where + ": via point needs 3 coordinates");
    return vp;
}

}  // namespace

ModelSpec parse_model(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        lines.push_back(raw);
    }
    if (lines.empty() || lines[0] != kHeader)
        throw DataError(origin + ": missing '" + std::string(kHeader) + "' header");

    ModelSpec model;
    std::string section;
    // defer joint/actuator/contact/group lines until all bodies are known
    std::vector<std::pair<int, std::string>> deferred_joints, deferred_actuators,
        deferred_contacts, deferred_groups, deferred_neutral;

    for (size_t li = 1; li < lines.size(); ++li) {
        std::string where = origin + ":" + std::to_string(li + 1);
        std::string line = strip_comment(lines[li]);
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0].front() == '[') {
            section = toks[0];
            continue;
        }
        if (section.empty()) {
            if (toks[0] == "name" && toks.size() == 2) {
                model.name = toks[1];
            } else if (toks[0] == "gravity" && toks.size() == 4) {
                for (int k = 0; k < 3; ++k) model.gravity[k] = parse_double(toks[k + 1], where);
            } else {
                throw DataError(where + ": unexpected line before first section");
            }
        } else if (section == "[bodies]") {
            // name parent mass com(3) inertia(6: xx yy zz xy xz yz) attach_pos(3) attach_quat(wxyz)
            if (toks.size() != 19) throw DataError(where + ": body line needs 19 fields");
            BodySegment b;
            b.name = toks[0];
            if (toks[1] == "-") {
                b.parent = -1;
            } else {
                b.parent = model.find_body(toks[1]);
                if (b.parent < 0) {
                    // self-parenting and forward references surface as dangling names
                    throw DataError(where + ": unknown parent body '" + toks[1] + "'");
                }
            }
            b.mass = parse_double(toks[2], where);
            for (int k = 0; k < 3; ++k) b.com[k] = parse_double(toks[3 + k], where);
            double ixx = parse_double(toks[6], where), iyy = parse_double(toks[7], where),
                   izz = parse_double(toks[8], where), ixy = parse_double(toks[9], where),
                   ixz = parse_double(toks[10], where), iyz = parse_double(toks[11], where);
            b.inertia << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
            for (int k = 0; k < 3; ++k) b.attach_pos[k] = parse_double(toks[12 + k], where);
            b.attach_quat = Quat(parse_double(toks[15], where), parse_double(toks[16], where),
                                 parse_double(toks[17], where), parse_double(toks[18], where));
            model.bodies.push_back(b);
        } else if (section == "[joints]") {
            deferred_joints.emplace_back(li, line);
        } else if (section == "[actuators]") {
            deferred_actuators.emplace_back(li, line);
        } else if (section == "[contacts]") {
            deferred_contacts.emplace_back(li, line);
        } else if (section == "[scale_groups]") {
            deferred_groups.emplace_back(li, line);
        } else if (section == "[neutral]") {
            deferred_neutral.emplace_back(li, line);
        } else {
            throw DataError(where + ": unknown section " + section);
        }
    }

    for (auto& [li, line] : deferred_joints) {
        std::string where = origin + ":" + std::to_string(li + 1);
        auto toks = tokenize(line);
        Joint j;
        j.name = toks[0];
        if (toks.size() < 3) throw DataError(where + ": joint line too short");
        if (toks[1] == "free") {
            j.type = JointType::Free;
            j.child_body = resolve_body(model, toks[2], where);
            j.parent_body = -1;
        } else if (toks[1] == "hinge") {
            if (toks.size() != 9) throw DataError(where + ": hinge line needs 9 fields");
            j.type = JointType::Hinge;
            j.parent_body = resolve_body(model, toks[2], where);
            j.child_body = resolve_body(model, toks[3], where);
            for (int k = 0; k < 3; ++k) j.axis[k] = parse_double(toks[4 + k], where);
            if (toks[7] == "*" && toks[8] == "*") {
                j.limited = false;
            } else {
                j.limited = true;
                j.lo = parse_double(toks[7], where);
                j.hi = parse_double(toks[8], where);
            }
        } else {
            throw DataError(where + ": unknown joint type '" + toks[1] + "'");
        }
        model.joints.push_back(j);
    }

    for (auto& [li, line] : deferred_actuators) {
        std::string where = origin + ":" + std::to_string(li + 1);
        auto toks = tokenize(line);
        if (toks.size() < 3) throw DataError(where + ": actuator line too short");
        Actuator a;
        a.name = toks[0];
        const std::string& kind = toks[1];
        if (kind == "rfc") {
            if (toks.size() != 4) throw DataError(where + ": rfc line needs 4 fields");
            a.kind = ActuatorKind::Rfc;
            a.rfc_channel = rfc_channel_from_name(toks[2], where);
            a.gear = parse_double(toks[3], where);
        } else if (kind == "torque") {
            if (toks.size() != 4) throw DataError(where + ": torque line needs 4 fields");
            a.kind = ActuatorKind::Torque;
            a.joint = -1;
            for (size_t j = 0; j < model.joints.size(); ++j)
                if (model.joints[j].name == toks[2]) a.joint = static_cast<int>(j);
            if (a.joint < 0) throw DataError(where + ": unknown joint '" + toks[2] + "'");
            a.gear = parse_double(toks[3], where);
        } else if (kind == "muscle") {
            if (toks.size() < 7) throw DataError(where + ": muscle line needs peak, vmax, rest length and >= 2 via points");
            a.kind = ActuatorKind::Muscle;
            a.lo = 0.0;
            a.hi = 1.0;
            a.gear = parse_double(toks[2], where);
            a.vmax = parse_double(toks[3], where);
            a.rest_length = parse_double(toks[4], where);
            for (size_t t = 5; t < toks.size(); ++t)
                a.path.push_back(parse_via_point(model, toks[t], where));
        } else {
            throw DataError(where + ": unknown actuator kind '" + kind + "'");
        }
        model.actuators.push_back(a);
    }

    for (auto& [li, line] : deferred_contacts) {
        std::string where = origin + ":" + std::to_string(li + 1);
        auto toks = tokenize(line);
        if (toks.size() != 7) throw DataError(where + ": contact line needs 7 fields");
        ContactGeom g;
        g.name = toks[0];
        g.body = resolve_body(model, toks[1], where);
        if (toks[2] != "L" && toks[2] != "R")
            throw DataError(where + ": contact side must be L or R");
        g.side = toks[2][0];
        g.radius = parse_double(toks[3], where);
        for (int k = 0; k < 3; ++k) g.offset[k] = parse_double(toks[4 + k], where);
        model.contacts.push_back(g);
    }

    for (auto& [li, line] : deferred_groups) {
        std::string where = origin + ":" + std::to_string(li + 1);
        auto toks = tokenize(line);
        if (toks.size() < 2) throw DataError(where + ": scale group line needs bodies or *");
        int g = -1;
        for (int k = 0; k < 8; ++k)
            if (scale_group_names()[k] == toks[0]) g = k;
        if (g < 0) throw DataError(where + ": unknown scale group '" + toks[0] + "'");
        if (toks.size() == 2 && toks[1] == "*") {
            if (g != 0) throw DataError(where + ": only 'overall' may use *");
            continue;  // overall over all bodies is the default
        }
        for (size_t t = 1; t < toks.size(); ++t)
            model.scale_groups[g].push_back(resolve_body(model, toks[t], where));
    }

    if (!deferred_neutral.empty()) {
        std::vector<double> vals;
        for (auto& [li, line] : deferred_neutral) {
            std::string where = origin + ":" + std::to_string(li + 1);
            for (const std::string& tok : tokenize(line)) vals.push_back(parse_double(tok, where));
        }
        model.neutral_pose = Eigen::Map<VecX>(vals.data(), static_cast<long>(vals.size()));
    }

    model.finalize();
    model.validate();
    return model;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), path);
}

std::string serialize_model(const ModelSpec& model) {
    std::ostringstream os;
    os << kHeader << "\n";
    os << "name " << model.name << "\n";
    os << "gravity " << format_double(model.gravity[0]) << " " << format_double(model.gravity[1])
       << " " << format_double(model.gravity[2]) << "\n";

    os << "[bodies]\n";
    for (const BodySegment& b : model.bodies) {
        os << b.name << " " << (b.parent < 0 ? "-" : model.bodies[b.parent].name) << " "
           << format_double(b.mass);
        for (int k = 0; k < 3; ++k) os << " " << format_double(b.com[k]);
        os << " " << format_double(b.inertia(0, 0)) << " " << format_double(b.inertia(1, 1))
           << " " << format_double(b.inertia(2, 2)) << " " << format_double(b.inertia(0, 1))
           << " " << format_double(b.inertia(0, 2)) << " " << format_double(b.inertia(1, 2));
        for (int k = 0; k < 3; ++k) os << " " << format_double(b.attach_pos[k]);
        os << " " << format_double(b.attach_quat.w()) << " " << format_double(b.attach_quat.x())
           << " " << format_double(b.attach_quat.y()) << " " << format_double(b.attach_quat.z())
           << "\n";
    }

    os << "[joints]\n";
    for (const Joint& j : model.joints) {
        if (j.type == JointType::Free) {
            os << j.name << " free " << model.bodies[j.child_body].name << "\n";
        } else {
            os << j.name << " hinge " << model.bodies[j.parent_body].name << " "
               << model.bodies[j.child_body].name;
            for (int k = 0; k < 3; ++k) os << " " << format_double(j.axis[k]);
            if (j.limited)
                os << " " << format_double(j.lo) << " " << format_double(j.hi) << "\n";
            else
                os << " * *\n";
        }
    }

    os << "[actuators]\n";
    for (const Actuator& a : model.actuators) {
        switch (a.kind) {
            case ActuatorKind::Rfc:
                os << a.name << " rfc " << rfc_channel_name(a.rfc_channel) << " "
                   << format_double(a.gear) << "\n";
                break;
            case ActuatorKind::Torque:
                os << a.name << " torque " << model.joints[a.joint].name << " "
                   << format_double(a.gear) << "\n";
                break;
            case ActuatorKind::Muscle: {
                os << a.name << " muscle " << format_double(a.gear) << " " << format_double(a.vmax)
                   << " " << format_double(a.rest_length);
                for (const MuscleViaPoint& vp : a.path) {
                    os << " " << model.bodies[vp.body].name << ":" << format_double(vp.offset[0])
                       << "," << format_double(vp.offset[1]) << "," << format_double(vp.offset[2]);
                }
                os << "\n";
                break;
            }
        }
    }

    os << "[contacts]\n";
    for (const ContactGeom& g : model.contacts) {
        os << g.name << " " << model.bodies[g.body].name << " " << g.side << " "
           << format_double(g.radius);
        for (int k = 0; k < 3; ++k) os << " " << format_double(g.offset[k]);
        os << "\n";
    }

    os << "[scale_groups]\n";
    for (int g = 1; g < 8; ++g) {
        if (model.scale_groups[g].empty()) continue;
        os << scale_group_names()[g];
        for (int b : model.scale_groups[g]) os << " " << model.bodies[b].name;
        os << "\n";
    }

    os << "[neutral]\n";
    for (int i = 0; i < model.neutral_pose.size(); ++i) {
        os << format_double(model.neutral_pose[i]) << (i + 1 == model.neutral_pose.size() ? "\n" : " ");
    }
    return os.str();
}

void save_model(const ModelSpec& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write model file: " + path);
    out << serialize_model(model);
}

}  // namespace kintwin
