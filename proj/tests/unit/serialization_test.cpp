#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "qcb/sampling.hpp"
#include "qcb/serialization.hpp"

using namespace qcb;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Json, ChannelRoundTripInEveryRepresentation) {
  sampling::Engine rng(61);
  const auto ch = sampling::random_channel(ChannelClass::C, rng);
  for (const auto& copy : {QubitChannel::from_kraus(ch.kraus(), ChannelClass::C),
                           QubitChannel::from_ptm(ch.ptm()), QubitChannel::from_choi(ch.choi())}) {
    const auto back = io::channel_from_json(io::parse_json_text(io::to_json(copy).dump()));
    EXPECT_LT((back.choi() - ch.choi()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(back.representation(), copy.representation());
    EXPECT_EQ(back.class_tag(), copy.class_tag());
  }
}

TEST(Json, StateRoundTripAndPureForm) {
  sampling::Engine rng(62);
  const auto tau = sampling::random_bipartite_state(rng);
  const auto back = io::state_from_json(io::to_json(tau));
  EXPECT_LT((back.matrix() - tau.matrix()).cwiseAbs().maxCoeff(), 1e-15);
  const auto pure = io::state_from_json(Json::parse(R"({"pure": [0.7071067811865476, 0, 0, 0.7071067811865476]})"));
  EXPECT_LT((pure.matrix() - BipartiteState::maximally_entangled().matrix()).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(Json, PpovmRoundTrip) {
  const auto ppovm = io::ppovm_from_json(io::to_json(
      ancilla_free_ppovm(QubitState::from_pure(PureState::plus()),
                         QubitPovm::make({PureState::zero().projector(), PureState::one().projector()},
                                         {"up", "down"}))));
  EXPECT_EQ(ppovm.labels()[1], "down");
  EXPECT_EQ(ppovm.size(), 2u);
}

TEST(Json, InstanceRoundTripAndOverlapForm) {
  const auto inst = ConversionInstance::from_overlaps(0.3, 0.7);
  const auto back = io::instance_from_json(io::to_json(inst));
  EXPECT_NEAR(back.x(), 0.3, 1e-15);
  EXPECT_NEAR(back.y(), 0.7, 1e-15);
  const auto overlaps = io::instance_from_json(Json::parse(R"({"x": 0.25, "y": 1})"));
  EXPECT_NEAR(overlaps.y(), 1.0, 1e-15);
}

TEST(Json, DiagnosticsNameTheField) {
  const std::string bad_entry = R"({"anc_marginal": [[0.5, 0], [0, 0.5]],
    "effects": [{"matrix": [[0.5,0,0,0],[0,0.5,0,0],[0,0,0,0],[0,0,0,0]]},
                {"matrix": [[0,0,0,0],[0,0,0,0],["x",0,0.5,0],[0,0,0,0.5]]}]})";
  EXPECT_EQ(error_of([&] { io::ppovm_from_json(Json::parse(bad_entry)); }),
            "$.effects[1].matrix[2][0]: expected a number or [re, im]");
  EXPECT_NE(error_of([&] { io::channel_from_json(Json::parse(R"({"representation": "magic"})")); })
                .find("$.representation"),
            std::string::npos);
  EXPECT_NE(error_of([&] { io::state_from_json(Json::parse(R"({"matrix": [[1]]})")); })
                .find("$.matrix"),
            std::string::npos);
}

TEST(Json, MalformedTextReportsLineAndColumn) {
  const std::string msg = error_of([] { io::parse_json_text("{\n  \"x\": 0.3,\n  \"y\": }", "inst.json"); });
  EXPECT_EQ(msg.rfind("inst.json:3:", 0), 0u) << msg;
}

TEST(Presets, KnownNamesAndWerner) {
  EXPECT_TRUE(io::tau_preset("maximally-entangled").has_value());
  EXPECT_TRUE(io::tau_preset("product-00").has_value());
  EXPECT_FALSE(io::tau_preset("nope").has_value());
  const auto w = io::tau_preset("werner-state:0.5");
  ASSERT_TRUE(w.has_value());
  // w P+ + (1 - w) I/4
  const Mat4 expected = 0.5 * BipartiteState::maximally_entangled().matrix() + 0.125 * Mat4::Identity();
  EXPECT_LT((w->matrix() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(io::tau_preset("werner-state:abc"), ValidationError);
}
