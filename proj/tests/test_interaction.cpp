#include "itsg/interaction.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "itsg/synthgen.hpp"

using namespace itsg;

namespace {

constexpr double kRate = 30.0;

EntityTrack track_of(const std::string& id, EntityKind kind,
                     const std::vector<Eigen::Vector3d>& ps) {
  EntityTrack tr;
  tr.id = id;
  tr.kind = kind;
  tr.label = id;
  for (std::size_t k = 0; k < ps.size(); ++k)
    tr.samples.push_back({static_cast<double>(k) / kRate, ps[k], Eigen::Vector3d::Zero()});
  return tr;
}

std::vector<Eigen::Vector3d> constant(std::size_t n, double x, double y) {
  return std::vector<Eigen::Vector3d>(n, Eigen::Vector3d(x, y, 0.0));
}

/// Bounded random walk around (cx, cy) with the given step and radius.
std::vector<Eigen::Vector3d> wander(std::size_t n, double cx, double cy, double step,
                                    double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-step, step);
  std::vector<Eigen::Vector3d> out;
  Eigen::Vector3d p(cx, cy, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    Eigen::Vector3d next = p + Eigen::Vector3d(uni(rng), uni(rng), 0.0);
    if (std::hypot(next.x() - cx, next.y() - cy) > radius) next = {cx, cy, 0.0};
    out.push_back(next);
    p = next;
  }
  return out;
}

std::vector<Eigen::Vector3d> shifted(const std::vector<Eigen::Vector3d>& ps, double dx,
                                     double dy) {
  std::vector<Eigen::Vector3d> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.emplace_back(p.x() + dx, p.y() + dy, 0.0);
  return out;
}

Demonstration demo_of(std::vector<EntityTrack> tracks) {
  Demonstration demo;
  demo.rate = kRate;
  demo.tracks = std::move(tracks);
  return demo;
}

}  // namespace

TEST(SignalCache, DistanceIsWindowedSymmetricWithNaNEdges) {
  const std::size_t n = 90;
  auto demo = demo_of({track_of("a", EntityKind::HandRight, constant(n, 0.0, 0.0)),
                       track_of("b", EntityKind::Object, constant(n, 0.3, 0.4))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  ASSERT_EQ(cache.half(), 15);
  const auto& d_ab = cache.distance("a", "b");
  const auto& d_ba = cache.distance("b", "a");
  EXPECT_EQ(&d_ab, &d_ba);  // one cached series per unordered pair
  for (int k = 0; k < 15; ++k) EXPECT_TRUE(std::isnan(d_ab[static_cast<std::size_t>(k)]));
  for (std::size_t k = 15; k + 15 < n; ++k) EXPECT_NEAR(d_ab[k], 0.5, 1e-12);
  EXPECT_TRUE(std::isnan(d_ab[n - 1]));
}

TEST(ClassifyHo, CoMotionInsideGateIsCoupled) {
  const std::size_t n = 120;
  auto walk = wander(n, 0.2, 0.1, 0.015, 0.06, 11);
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, walk),
                       track_of("obj", EntityKind::Object, shifted(walk, 0.02, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), {}, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::CoupledMotion);
  EXPECT_EQ(ho.object_id, "obj");
  EXPECT_GT(ho.mi, cfg.mi_on);
}

TEST(ClassifyHo, RestingNearbyWithoutHistoryIsNone) {
  const std::size_t n = 120;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.2, 0.1)),
                       track_of("obj", EntityKind::Object, constant(n, 0.25, 0.1))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), {}, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::None);
}

TEST(ClassifyHo, EngagementSettlesIntoDocked) {
  const std::size_t n = 120;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.2, 0.1)),
                       track_of("obj", EntityKind::Object, constant(n, 0.25, 0.1))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState prev{HOKind::CoupledMotion, "obj", 0.4};
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), prev, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::Docked);
  EXPECT_EQ(ho.object_id, "obj");
  const auto again = classify_ho(61, *demo.find("hand_r"), demo.objects(), ho, cfg, cache);
  EXPECT_EQ(again.kind, HOKind::Docked);
}

TEST(ClassifyHo, DockedNeverContinuesOntoAnotherObject) {
  const std::size_t n = 120;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.2, 0.1)),
                       track_of("obj_a", EntityKind::Object, constant(n, 0.25, 0.1))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState prev{HOKind::CoupledMotion, "obj_b", 0.4};
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), prev, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::None);
}

TEST(ClassifyHo, OutsideGateEndsEverything) {
  const std::size_t n = 120;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.2, 0.1)),
                       track_of("obj", EntityKind::Object, constant(n, 0.4, 0.1))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState prev{HOKind::Docked, "obj", 0.0};
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), prev, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::None);
}

TEST(ClassifyHo, FirstPositiveDetectionWins) {
  // The nearer object is inert (no motion, no history); the farther one is
  // carried.  Ranking tries the near one first, fails, then fires on the
  // carried one.
  const std::size_t n = 120;
  auto walk = wander(n, 0.2, 0.1, 0.01, 0.025, 13);
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, walk),
                       track_of("obj_near", EntityKind::Object, constant(n, 0.24, 0.1)),
                       track_of("obj_far", EntityKind::Object, shifted(walk, 0.08, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), {}, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::CoupledMotion);
  EXPECT_EQ(ho.object_id, "obj_far");
}

TEST(ClassifyHo, EqualDistancesBreakTiesById) {
  const std::size_t n = 120;
  auto walk = wander(n, 0.2, 0.1, 0.015, 0.06, 17);
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, walk),
                       track_of("obj_b", EntityKind::Object, shifted(walk, -0.05, 0.0)),
                       track_of("obj_a", EntityKind::Object, shifted(walk, 0.05, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const auto ho = classify_ho(60, *demo.find("hand_r"), demo.objects(), {}, cfg, cache);
  EXPECT_EQ(ho.kind, HOKind::CoupledMotion);
  EXPECT_EQ(ho.object_id, "obj_a");
}

TEST(ClassifyOo, RequiresActiveEngagement) {
  const std::size_t n = 90;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 1.0, 1.0)),
                       track_of("obj", EntityKind::Object, constant(n, 0.1, 0.0)),
                       track_of("bg", EntityKind::Object, constant(n, 0.0, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const auto oo = classify_oo(45, {}, *demo.find("obj"), {demo.find("bg")}, {}, cfg, cache);
  EXPECT_EQ(oo.kind, OOKind::None);
}

TEST(ClassifyOo, DockedEngagementMakesContactEssential) {
  const std::size_t n = 90;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.13, 0.02)),
                       track_of("obj", EntityKind::Object, constant(n, 0.1, 0.0)),
                       track_of("bg", EntityKind::Object, constant(n, 0.0, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState ho{HOKind::Docked, "obj", 0.0};
  const auto oo = classify_oo(45, ho, *demo.find("obj"), {demo.find("bg")}, {}, cfg, cache);
  EXPECT_EQ(oo.kind, OOKind::EssentialContact);
  EXPECT_EQ(oo.manipulated_id, "obj");
  EXPECT_EQ(oo.background_id, "bg");
}

TEST(ClassifyOo, PassingContactDuringFlatTrendIsTransient) {
  // Constant-speed pass probed mid-approach and mid-departure: there the
  // in-window distance spread is steady, so the entropy trend stays flat.
  // (Right at closest approach the spread contracts and the reading turns
  // essential; that neighborhood is deliberately avoided here.)
  const std::size_t n = 180;
  std::vector<Eigen::Vector3d> ps;
  for (std::size_t k = 0; k < n; ++k)
    ps.emplace_back(-0.45 + 0.005 * static_cast<double>(k), 0.05, 0.0);
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 1.0, 1.0)),
                       track_of("obj", EntityKind::Object, ps),
                       track_of("bg", EntityKind::Object, constant(n, 0.0, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState ho{HOKind::CoupledMotion, "obj", 1.0};
  for (const long k : {60L, 110L}) {
    const auto oo = classify_oo(k, ho, *demo.find("obj"), {demo.find("bg")}, {}, cfg, cache);
    EXPECT_EQ(oo.kind, OOKind::TransientContact) << "frame " << k;
  }
}

TEST(ClassifyOo, SettlingApproachIsEssential) {
  // Exponentially decelerating approach: the distance spread inside the
  // window shrinks frame over frame, so the entropy trend falls.
  const std::size_t n = 150;
  std::vector<Eigen::Vector3d> ps;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / kRate;
    ps.emplace_back(0.012 + 0.17 * std::exp(-1.6 * t), 0.0, 0.0);
  }
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 1.0, 1.0)),
                       track_of("obj", EntityKind::Object, ps),
                       track_of("bg", EntityKind::Object, constant(n, 0.0, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState ho{HOKind::CoupledMotion, "obj", 1.0};
  const auto oo = classify_oo(70, ho, *demo.find("obj"), {demo.find("bg")}, {}, cfg, cache);
  EXPECT_EQ(oo.kind, OOKind::EssentialContact);
}

TEST(ClassifyOo, EstablishedContactOutlivesCloserCandidates) {
  const std::size_t n = 90;
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(n, 0.13, 0.02)),
                       track_of("obj", EntityKind::Object, constant(n, 0.1, 0.0)),
                       track_of("bg_old", EntityKind::Object, constant(n, 0.0, 0.0)),
                       track_of("bg_new", EntityKind::Object, constant(n, 0.15, 0.0))});
  AnalysisConfig cfg;
  SignalCache cache(demo, cfg);
  const HOState ho{HOKind::Docked, "obj", 0.0};
  const OOState prev{OOKind::EssentialContact, "obj", "bg_old"};
  const auto oo = classify_oo(45, ho, *demo.find("obj"),
                              {demo.find("bg_old"), demo.find("bg_new")}, prev, cfg, cache);
  EXPECT_EQ(oo.kind, OOKind::EssentialContact);
  EXPECT_EQ(oo.background_id, "bg_old");  // bg_new is closer but cannot usurp
}

TEST(DetectEvents, RequiresAHand) {
  auto demo = demo_of({track_of("obj", EntityKind::Object, constant(90, 0.0, 0.0))});
  AnalysisConfig cfg;
  EXPECT_THROW(detect_events(demo, cfg), DataError);
}

TEST(DetectEvents, RejectsRaggedGrids) {
  auto a = track_of("hand_r", EntityKind::HandRight, constant(90, 0.0, 0.0));
  auto b = track_of("obj", EntityKind::Object, constant(89, 0.3, 0.0));
  AnalysisConfig cfg;
  EXPECT_THROW(detect_events(demo_of({a, b}), cfg), DataError);
}

TEST(DetectEvents, QuietSceneProducesNothing) {
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, constant(120, 0.5, 0.5)),
                       track_of("obj", EntityKind::Object, constant(120, 0.0, 0.0))});
  AnalysisConfig cfg;
  EXPECT_TRUE(detect_events(demo, cfg).empty());
}

TEST(DetectEvents, PickPlaceEventChain) {
  const auto [demo, truth] = generate(single_pick_place_script());
  AnalysisConfig cfg;
  const auto events = detect_events(demo, cfg);

  std::vector<const InteractionEvent*> ho, oo;
  for (const auto& ev : events) {
    if (ev.subject_id == "hand_r") ho.push_back(&ev);
    if (ev.subject_id == "block_a" && ev.kind != InteractionKind::TransientContact)
      oo.push_back(&ev);
  }
  ASSERT_EQ(ho.size(), 2u);
  EXPECT_EQ(ho[0]->kind, InteractionKind::CoupledMotion);
  EXPECT_EQ(ho[1]->kind, InteractionKind::Docked);
  EXPECT_EQ(ho[0]->object_id, "block_a");
  // Docked begins exactly where the coupled motion ends (half-open chain).
  EXPECT_EQ(ho[0]->end_t, ho[1]->start_t);
  ASSERT_TRUE(ho[0]->mean_mi.has_value());
  ASSERT_TRUE(ho[1]->mean_mi.has_value());
  EXPECT_GT(*ho[0]->mean_mi, cfg.mi_on);
  EXPECT_EQ(*ho[1]->mean_mi, 0.0);  // noise-free static contact

  ASSERT_EQ(oo.size(), 1u);
  EXPECT_EQ(oo[0]->kind, InteractionKind::EssentialContact);
  EXPECT_EQ(oo[0]->object_id, "base");
  EXPECT_EQ(oo[0]->end_t, ho[1]->end_t);  // contact stays open until release

  // Detected timing stays within half a window plus the trend lag of the
  // scripted schedule.
  const double tol = 0.5 + cfg.trend_n / 30.0;
  EXPECT_NEAR(ho[0]->start_t, 3.0, tol);
  EXPECT_NEAR(ho[1]->end_t, 4.8, tol);
}

TEST(DetectEvents, EventsAreSortedAndHalfOpen) {
  const auto [demo, truth] = generate(letter_r_script());
  const auto events = detect_events(demo, AnalysisConfig{});
  ASSERT_FALSE(events.empty());
  for (std::size_t i = 0; i < events.size(); ++i) {
    EXPECT_LT(events[i].start_t, events[i].end_t);
    if (i > 0) EXPECT_LE(events[i - 1].start_t, events[i].start_t);
  }
}

TEST(DetectEvents, ReGraspResumesEssentialContact) {
  // Place an object against a background, walk away, come back, and carry it
  // off.  The essential relation must resume on re-grasp; the departure must
  // not read as a fresh transient pass.
  const std::size_t n = 300;
  std::vector<Eigen::Vector3d> hand_ps, obj_ps;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / kRate;
    Eigen::Vector3d obj(0.13, 0.0, 0.0);
    if (t < 2.0) {
      obj.x() = 0.13 + 0.02 * std::sin(two_pi * 1.5 * t);  // carried wiggle near bg
    } else if (t < 3.0) {
      obj.x() = 0.13;  // settled
    } else if (t < 6.0) {
      obj.x() = 0.13;  // resting while the hand is away
    } else {
      const double u = (t - 6.0) / 4.0;
      obj.x() = 0.13 + 1.0 * u * u;  // carried away, accelerating
    }
    Eigen::Vector3d hand = obj + Eigen::Vector3d(0.03, 0.0, 0.0);
    if (t >= 3.0 && t < 5.0) {
      hand = {0.16, 0.9, 0.0};  // parked far away
    } else if (t >= 5.0 && t < 6.0) {
      const double u = t - 5.0;
      hand = {0.16, 0.9 * (1.0 - u), 0.0};  // returning
    }
    hand_ps.push_back(hand);
    obj_ps.push_back(obj);
  }
  auto demo = demo_of({track_of("hand_r", EntityKind::HandRight, hand_ps),
                       track_of("obj", EntityKind::Object, obj_ps),
                       track_of("bg", EntityKind::Object, constant(n, 0.0, 0.0))});
  AnalysisConfig cfg;
  const auto events = detect_events(demo, cfg);

  std::vector<const InteractionEvent*> contacts;
  for (const auto& ev : events)
    if (ev.subject_id == "obj" && ev.object_id == "bg") contacts.push_back(&ev);
  ASSERT_GE(contacts.size(), 2u);

  bool seen_essential = false;
  int essential_runs = 0;
  for (const auto* ev : contacts) {
    if (ev->kind == InteractionKind::EssentialContact) {
      ++essential_runs;
      seen_essential = true;
    } else {
      // Transient passes may only precede the first essential contact.
      EXPECT_FALSE(seen_essential)
          << "transient contact at " << ev->start_t << " after an essential one";
    }
  }
  EXPECT_GE(essential_runs, 2);  // the placement and the re-grasp resumption
}
