// type_checker.cpp - Typing rules over single-assignment programs
#include "physframe/type_checker.hpp"

namespace physframe
{

namespace
{

FrameType frame_type_for(const TypeEnv & env, const std::string & raw_id)
{
  const std::string id = normalize_frame_id(raw_id);
  if (const auto it = env.frames.find(id); it != env.frames.end()) {
    return it->second;
  }
  FrameType t;
  t.id = id;
  return t;
}

Rotation rotation_of(const TypeEnv & env, const std::string & var)
{
  const VarType t = env.type_of(var);
  if (const auto * r = std::get_if<Rotation>(&t)) {
    return *r;
  }
  return Rotation::top();
}

const FrameType * frame_of(const VarType & t) { return std::get_if<FrameType>(&t); }

std::string describe_frame(const std::string & id) { return id.empty() ? "<empty>" : "'" + id + "'"; }

/// Variables whose role is a rotation: defined by a rotation statement or
/// consumed where a rotation is expected.
std::set<std::string> rotation_variables(const VersionedProgram & p)
{
  std::set<std::string> out;
  for (const auto & s : p.program.statements) {
    if (const auto * c = std::get_if<stmt::RotCompose>(&s.node)) {
      out.insert(c->target);
      out.insert(c->first);
      out.insert(c->second);
    } else if (const auto * k = std::get_if<stmt::RotConst>(&s.node)) {
      out.insert(k->target);
    } else if (const auto * d = std::get_if<stmt::RotDyn>(&s.node)) {
      out.insert(d->target);
    } else if (const auto * n = std::get_if<stmt::NewTransform>(&s.node)) {
      out.insert(n->rotation);
    }
  }
  return out;
}

}  // namespace

std::string to_string(const VarType & t)
{
  return std::visit(
    [](const auto & v) -> std::string {
      using T = std::decay_t<decltype(v)>;
      if constexpr (std::is_same_v<T, std::monostate>) {
        return "free";
      } else if constexpr (std::is_same_v<T, ExternalFrame>) {
        return "external";
      } else if constexpr (std::is_same_v<T, FrameType>) {
        return "frame(" + describe_frame(v.id) + ")";
      } else if constexpr (std::is_same_v<T, TransformType>) {
        return "transform(" + describe_frame(v.pid) + " <- " + describe_frame(v.cid) + ", " +
               to_string(v.rot) + ")";
      } else {
        return "rotation" + to_string(v);
      }
    },
    t);
}

VarType TypeEnv::type_of(const std::string & var) const
{
  const auto it = vars_.find(var);
  return it == vars_.end() ? VarType{} : it->second;
}

bool TypeEnv::is_bound(const std::string & var) const { return vars_.count(var) != 0; }

bool TypeEnv::bind(const std::string & var, VarType t)
{
  return vars_.emplace(var, std::move(t)).second;
}

void TypeEnv::refine(const std::string & var, VarType t) { vars_[var] = std::move(t); }

void check_transform_creation(
  const stmt::NewTransform & s, const SourceLoc & loc, CheckContext & ctx)
{
  TransformType t;
  t.cid = normalize_frame_id(s.child);
  t.pid = normalize_frame_id(s.parent);
  t.x = disp(s.offset[0], ctx.consts);
  t.y = disp(s.offset[1], ctx.consts);
  t.z = disp(s.offset[2], ctx.consts);
  t.rot = rotation_of(ctx.env, s.rotation);

  if (!t.is_well_formed() && !t.cid.empty()) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::RedundantTransform, loc,
      "transform has identical parent and child frame '" + t.cid + "'", t.pid + "->" + t.cid));
  } else if (auto d = check_orientation_convention(t.pid, t.cid, t.rot, ctx.conv, loc)) {
    ctx.diagnostics.push_back(std::move(*d));
  }

  if (!t.cid.empty()) {
    FrameType child;
    child.id = t.cid;
    child.pid = t.pid;
    child.x = t.x;
    child.y = t.y;
    child.z = t.z;
    child.axes = rotate(ctx.conv.expected_axes(t.pid), t.rot);
    ctx.env.frames.emplace(t.cid, std::move(child));
  }
  ctx.env.bind(s.target, std::move(t));
}

void check_transform_publish(
  const stmt::SendTransform & s, const SourceLoc & loc, CheckContext & ctx)
{
  const VarType vt = ctx.env.type_of(s.transform);
  const auto * t = std::get_if<TransformType>(&vt);
  if (t == nullptr) {
    return;
  }
  if (t->cid.empty()) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::MissingChildFrame, loc, "published transform has no child frame id", t->pid + "->"));
    return;
  }
  if (t->pid.empty()) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::MissingFrame, loc, "published transform has no parent frame id", "->" + t->cid));
    return;
  }
  if (t->cid == t->pid) {
    // already reported where the transform was created
    return;
  }
  if (auto d = ctx.tree.add_edge(t->pid, t->cid, loc)) {
    ctx.diagnostics.push_back(std::move(*d));
  }
}

void check_lookup(
  const stmt::LookupTransform & s, const SourceLoc & loc, CheckContext & ctx,
  std::vector<ReachabilityObligation> & pending)
{
  TransformType t;
  t.pid = normalize_frame_id(s.parent);
  t.cid = normalize_frame_id(s.child);
  if (t.pid.empty() || t.cid.empty()) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::MissingFrame, loc, "lookupTransform with an empty frame id", t.pid + "->" + t.cid));
  } else if (t.pid == t.cid) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::RedundantTransform, loc,
      "lookupTransform between identical frames '" + t.pid + "' is an identity transform",
      t.pid + "->" + t.cid));
  } else {
    pending.push_back({t.pid, t.cid, loc});
  }
  ctx.env.bind(s.target, std::move(t));
}

void check_apply(const stmt::ApplyTransform & s, const SourceLoc & loc, CheckContext & ctx)
{
  const VarType tt = ctx.env.type_of(s.transform);
  const auto * t = std::get_if<TransformType>(&tt);
  if (t == nullptr) {
    ctx.env.bind(s.target, ExternalFrame{});
    return;
  }
  const VarType src = ctx.env.type_of(s.source);
  if (const auto * f = frame_of(src)) {
    if (f->id.empty()) {
      ctx.diagnostics.push_back(make_diagnostic(
        Code::MissingFrame, loc, "transform applied to a value with no frame id", s.source));
    } else if (!t->cid.empty() && f->id != t->cid) {
      ctx.diagnostics.push_back(make_diagnostic(
        Code::FrameMismatch, loc,
        "transform expects a value in " + describe_frame(t->cid) + " but got one in " +
          describe_frame(f->id),
        t->pid + "<-" + t->cid));
    }
  }
  ctx.env.bind(s.target, frame_type_for(ctx.env, t->pid));
}

void check_stamped_publish(const stmt::Publish & s, const SourceLoc & loc, CheckContext & ctx)
{
  const VarType t = ctx.env.type_of(s.source);
  const auto * f = frame_of(t);
  const bool missing = std::holds_alternative<std::monostate>(t) || (f != nullptr && f->id.empty());
  if (missing) {
    ctx.diagnostics.push_back(make_diagnostic(
      Code::MissingFrame, loc,
      "value published on '" + s.topic + "' is not stamped with a frame id", s.topic));
  }
}

TypeEnv TypeChecker::check(const VersionedProgram & p, const ConstEnv & consts)
{
  TypeEnv env;
  CheckContext ctx{env, tree_, conv_, consts, diagnostics_};
  const std::set<std::string> rotations = rotation_variables(p);

  // explicit frame-id assignments refine the variable wherever it is defined
  std::map<std::string, std::string> refined;
  for (const auto & s : p.program.statements) {
    if (const auto * set = std::get_if<stmt::SetId>(&s.node)) {
      refined[set->target] = set->frame;
    }
  }
  auto bind_frame = [&](const std::string & var, const std::string & id) {
    const auto it = refined.find(var);
    env.bind(var, frame_type_for(env, it != refined.end() ? it->second : id));
  };
  auto mismatch = [&](const SourceLoc & loc, const std::string & what) {
    diagnostics_.push_back(make_diagnostic(Code::FrameMismatch, loc, what));
  };

  for (const auto & s : p.program.statements) {
    const SourceLoc & loc = s.loc;
    std::visit(
      [&](const auto & st) {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, stmt::Assign>) {
          // plain constants carry no frame
        } else if constexpr (std::is_same_v<T, stmt::Copy>) {
          VarType t = env.type_of(st.source);
          if (!std::holds_alternative<Rotation>(t) && rotations.count(st.target) != 0) {
            // a rotation built from a non-constant value
            t = Rotation::top();
          }
          if (const auto * f = frame_of(t); f && refined.count(st.target)) {
            bind_frame(st.target, f->id);
          } else {
            env.bind(st.target, std::move(t));
          }
        } else if constexpr (std::is_same_v<T, stmt::Element>) {
          env.bind(st.target, env.type_of(st.source));
        } else if constexpr (std::is_same_v<T, stmt::BinOp>) {
          const VarType a = st.lhs.is_var() ? env.type_of(st.lhs.var()) : VarType{};
          const VarType b = st.rhs.is_var() ? env.type_of(st.rhs.var()) : VarType{};
          const FrameType * fa = frame_of(a);
          const FrameType * fb = frame_of(b);
          if (fa && fb && !fa->id.empty() && !fb->id.empty() && fa->id != fb->id) {
            mismatch(
              loc, "operands of '" + std::string(1, st.op) + "' are in different frames " +
                     describe_frame(fa->id) + " and " + describe_frame(fb->id));
          }
          if (fa) {
            env.bind(st.target, *fa);
          } else if (fb) {
            env.bind(st.target, *fb);
          } else if (!std::holds_alternative<std::monostate>(a)) {
            env.bind(st.target, a);
          } else {
            env.bind(st.target, b);
          }
        } else if constexpr (std::is_same_v<T, stmt::Stamped>) {
          const std::string id = normalize_frame_id(st.frame);
          const VarType x = env.type_of(st.source);
          if (const auto * f = frame_of(x); f && !f->id.empty() && !id.empty() && f->id != id) {
            mismatch(
              loc, "value in " + describe_frame(f->id) + " stamped as " + describe_frame(id));
          } else if (!env.is_bound(st.source) && !id.empty()) {
            env.bind(st.source, frame_type_for(env, id));
          }
          bind_frame(st.target, id);
        } else if constexpr (std::is_same_v<T, stmt::SetId>) {
          env.refine(st.target, frame_type_for(env, st.frame));
        } else if constexpr (std::is_same_v<T, stmt::GetData>) {
          env.bind(st.target, env.type_of(st.source));
        } else if constexpr (std::is_same_v<T, stmt::External>) {
          if (refined.count(st.target)) {
            bind_frame(st.target, {});
          } else {
            env.bind(st.target, ExternalFrame{});
          }
        } else if constexpr (std::is_same_v<T, stmt::TransformTo>) {
          const std::string id = normalize_frame_id(st.frame);
          const VarType y = env.type_of(st.source);
          const FrameType * f = frame_of(y);
          if (id.empty() || (f && f->id.empty())) {
            diagnostics_.push_back(make_diagnostic(
              Code::MissingFrame, loc, "transform_to with an empty frame id", st.source));
          } else if (f && f->id != id) {
            pending_.push_back({id, f->id, loc});
          }
          bind_frame(st.target, id);
        } else if constexpr (std::is_same_v<T, stmt::NewTransform>) {
          check_transform_creation(st, loc, ctx);
          if (const auto * t = std::get_if<TransformType>(&env.bindings().at(st.target))) {
            transforms_.push_back({std::string(base_name(st.target)), *t, loc});
          }
        } else if constexpr (std::is_same_v<T, stmt::SendTransform>) {
          check_transform_publish(st, loc, ctx);
        } else if constexpr (std::is_same_v<T, stmt::LookupTransform>) {
          check_lookup(st, loc, ctx, pending_);
        } else if constexpr (std::is_same_v<T, stmt::ApplyTransform>) {
          check_apply(st, loc, ctx);
        } else if constexpr (std::is_same_v<T, stmt::RotConst>) {
          const ConstValue v = consts.lookup(st.target);
          const auto * m = std::get_if<Eigen::Matrix3d>(&v);
          env.bind(st.target, orthogonalize(m ? *m : st.value));
        } else if constexpr (std::is_same_v<T, stmt::RotDyn>) {
          env.bind(st.target, Rotation::top());
        } else if constexpr (std::is_same_v<T, stmt::RotCompose>) {
          env.bind(
            st.target, compose(rotation_of(env, st.first), rotation_of(env, st.second)));
        } else if constexpr (std::is_same_v<T, stmt::Publish>) {
          check_stamped_publish(st, loc, ctx);
        }
      },
      s.node);
  }
  return env;
}

std::vector<Diagnostic> TypeChecker::finish()
{
  for (const auto & ob : pending_) {
    if (!tree_.reachable(ob.from, ob.to)) {
      diagnostics_.push_back(make_diagnostic(
        Code::UnreachableFrames, ob.loc,
        "no transform path between '" + ob.from + "' and '" + ob.to + "' in the frame tree",
        ob.from + "->" + ob.to));
    }
  }
  pending_.clear();
  return diagnostics_;
}

TypeResult infer_types(
  const VersionedProgram & p, const ConstEnv & consts, TfTree & tree, const ConventionTable & conv)
{
  TypeChecker checker(tree, conv);
  TypeEnv env = checker.check(p, consts);
  return {std::move(env), checker.finish()};
}

}  // namespace physframe
