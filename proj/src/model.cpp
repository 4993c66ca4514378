#include "smtkit/model.hpp"

namespace smtkit {

const ConstVal& FuncInterp::apply(std::span<const ConstVal> args) const {
  for (const Case& c : cases) {
    if (std::equal(c.args.begin(), c.args.end(), args.begin(), args.end())) return c.result;
  }
  return fallback;
}

const ConstVal* Model::find_const(std::string_view name) const {
  auto it = consts.find(name);
  return it == consts.end() ? nullptr : &it->second;
}

const FuncInterp* Model::find_func(std::string_view name) const {
  auto it = funcs.find(name);
  return it == funcs.end() ? nullptr : &it->second;
}

}  // namespace smtkit
