"""Simulator contracts: rendering, grasping, pushing, articulation, goals."""

import json
import math

import numpy as np
import pytest

from markmotion.errors import ConfigError, ConsistencyViolation, StageStepLimitExceeded
from markmotion.geometry import project, Point3
from markmotion.motion import Action
from markmotion.sim import (
    SCENE_BUILDERS,
    ArticulationSpec,
    GripperSpec,
    ObjectSpec,
    Predicate,
    Region,
    SceneSpec,
    TABLE_BOUNDS,
    TabletopSim,
    build_scene,
    build_sweep_fixture,
    convex_overlap,
    evaluate_all_goals,
    evaluate_group,
    evaluate_predicate,
    fixture_camera,
    line_chord,
    load_packaged_scene,
    polygon_centroid,
    rectangle,
    render_scene,
    square_polygon,
    tile_center,
    transform_polygon,
)

DT = 0.2


def _px(x, y, z, camera):
    """Integer pixel of a world point under the fixture camera."""
    p = project(Point3(x, y, z), camera, world=True)
    return int(round(p.v)), int(round(p.u))


def _mini_scene(objects, goals=()):
    return SceneSpec(
        name="mini",
        instruction="test scene",
        family="mini",
        table=TABLE_BOUNDS,
        camera=fixture_camera(),
        image_size=(640, 480),
        objects=tuple(objects),
        subtask_goals=tuple(goals),
    )


def _drive(sim, x, y, z, steps=20, grip=None):
    pose = sim.gripper_pose()
    g = pose.aperture if grip is None else grip
    vx = (x - pose.position.x) / (DT * steps)
    vy = (y - pose.position.y) / (DT * steps)
    vz = (z - pose.position.z) / (DT * steps)
    for _ in range(steps):
        sim.step(Action(vx=vx, vy=vy, vz=vz, gripper=g))


def _grasp_at(sim, x, y, z, yaw=0.0):
    """Hover, align, descend vertically, close."""
    _drive(sim, x, y, z + 0.06, steps=20)
    if yaw:
        sim.step(Action(wz=yaw / DT))
    _drive(sim, x, y, z, steps=4)
    sim.step(Action(gripper=0.0))


# ---------------------------------------------------------------------------
# Shapes
# ---------------------------------------------------------------------------


def test_convex_overlap_against_separation_oracle():
    a = square_polygon(0.0, 0.0, 0.1)
    assert convex_overlap(a, square_polygon(0.09, 0.0, 0.1))
    assert not convex_overlap(a, square_polygon(0.11, 0.0, 0.1))
    # Rotated square separated only along a diagonal axis.
    b = square_polygon(0.138, 0.0, 0.1, yaw=math.pi / 4)
    assert convex_overlap(a, square_polygon(0.12, 0.0, 0.1, yaw=math.pi / 4))
    assert not convex_overlap(a, b)


def test_line_chord_matches_hand_computation():
    rect = transform_polygon(rectangle(0.04, 0.2), 0.3, 0.0, 0.0)
    chord = line_chord(rect, (0.3, 0.05), (1.0, 0.0))
    assert chord is not None
    t0, t1 = chord
    assert abs(t0 - (-0.02)) < 1e-12 and abs(t1 - 0.02) < 1e-12
    assert line_chord(rect, (0.3, 0.11), (1.0, 0.0)) is None
    # Orientation-independent: clockwise vertex order gives the same chord.
    chord_cw = line_chord(rect[::-1], (0.3, 0.05), (1.0, 0.0))
    assert np.allclose(chord_cw, chord)


def test_polygon_centroid_rectangle():
    world = transform_polygon(rectangle(0.1, 0.3), 0.2, -0.1, 0.7)
    cx, cy = polygon_centroid(world)
    assert abs(cx - 0.2) < 1e-12 and abs(cy - (-0.1)) < 1e-12


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def test_render_depth_is_range_to_top_plane():
    scene = _mini_scene(
        [ObjectSpec(name="slab", footprint=rectangle(0.2, 0.2), height=0.07, x=0.1, y=0.05)]
    )
    sim = TabletopSim(scene)
    obs = sim.observe(include_gripper=False)
    assert obs.depth.data[0, 0] == pytest.approx(1.0, abs=1e-12)
    inside = obs.depth.data[obs.masks["slab"].bits]
    assert inside.shape[0] > 0
    assert np.allclose(inside, 1.0 - 0.07, atol=1e-12)


def test_render_mask_matches_projection_oracle():
    scene = _mini_scene(
        [ObjectSpec(name="slab", footprint=rectangle(0.2, 0.1), height=0.05, x=0.1, y=0.05)]
    )
    obs = TabletopSim(scene).observe(include_gripper=False)
    mask = obs.masks["slab"].bits
    v, u = _px(0.1, 0.05, 0.05, scene.camera)
    assert mask[v, u]
    v, u = _px(0.35, 0.05, 0.05, scene.camera)
    assert not mask[v, u]
    # Visible-area sanity: a 0.2 x 0.1 m slab seen at depth 0.95 spans about
    # (0.2*500/0.95) x (0.1*500/0.95) pixels.
    expected = (0.2 * 500 / 0.95) * (0.1 * 500 / 0.95)
    assert mask.sum() == pytest.approx(expected, rel=0.05)


def test_render_painter_order_and_disjoint_masks():
    scene = _mini_scene(
        [
            ObjectSpec(name="low", footprint=rectangle(0.2, 0.2), height=0.02, x=0.0, y=0.0,
                       color=(10, 10, 10)),
            ObjectSpec(name="tall", footprint=rectangle(0.1, 0.1), height=0.08, x=0.05, y=0.0,
                       color=(200, 0, 0)),
        ]
    )
    obs = TabletopSim(scene).observe(include_gripper=False)
    low, tall = obs.masks["low"].bits, obs.masks["tall"].bits
    assert not (low & tall).any()
    v, u = _px(0.05, 0.0, 0.08, scene.camera)
    assert tall[v, u]
    assert tuple(obs.rgb[v, u]) == (200, 0, 0)


def test_render_equal_height_tie_goes_to_later_object():
    scene = _mini_scene(
        [
            ObjectSpec(name="first", footprint=rectangle(0.1, 0.1), height=0.03, x=0.0, y=0.0,
                       color=(1, 2, 3)),
            ObjectSpec(name="second", footprint=rectangle(0.1, 0.1), height=0.03, x=0.05, y=0.0,
                       color=(4, 5, 6)),
        ]
    )
    obs = TabletopSim(scene).observe(include_gripper=False)
    v, u = _px(0.025, 0.0, 0.03, scene.camera)
    assert obs.masks["second"].bits[v, u]
    assert not obs.masks["first"].bits[v, u]


def test_render_gripper_occludes_and_neutral_is_out_of_view():
    scene = _mini_scene(
        [ObjectSpec(name="slab", footprint=rectangle(0.2, 0.2), height=0.02, x=0.0, y=0.0)]
    )
    sim = TabletopSim(scene)
    neutral = sim.observe()
    no_grip = sim.observe(include_gripper=False)
    assert np.array_equal(neutral.rgb, no_grip.rgb)  # neutral pose not in frame

    _drive(sim, 0.0, 0.0, 0.1, steps=10)
    hover = sim.observe()
    v, u = _px(0.0, 0.0, 0.12, scene.camera)
    from markmotion.sim import GRIPPER_COLOR

    assert tuple(hover.rgb[v, u]) == GRIPPER_COLOR
    assert not hover.masks["slab"].bits[v, u]


def test_render_is_deterministic():
    sim1 = TabletopSim(build_scene("table_wiping", seed=3))
    sim2 = TabletopSim(build_scene("table_wiping", seed=3))
    a, b = sim1.observe(), sim2.observe()
    assert np.array_equal(a.rgb, b.rgb)
    assert np.array_equal(a.depth.data, b.depth.data)
    for name in a.masks:
        assert np.array_equal(a.masks[name].bits, b.masks[name].bits)


def test_attached_object_renders_lifted():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    _drive(sim, -0.3, 0.0, 0.2, steps=5, grip=0.0)
    obs = sim.observe(include_gripper=False)
    bar_depth = obs.depth.data[obs.masks["bar"].bits]
    assert np.allclose(bar_depth, 1.0 - 0.2, atol=1e-9)


# ---------------------------------------------------------------------------
# Stepping and stage bookkeeping
# ---------------------------------------------------------------------------


def test_step_integrates_velocities_exactly():
    sim = TabletopSim(_mini_scene([]))
    start = sim.gripper_pose()
    for _ in range(7):
        sim.step(Action(vx=0.1, vy=-0.05, vz=0.02, wz=0.3))
    pose = sim.gripper_pose()
    assert pose.position.x == pytest.approx(start.position.x + 0.1 * 7 * DT, abs=1e-12)
    assert pose.position.y == pytest.approx(start.position.y - 0.05 * 7 * DT, abs=1e-12)
    assert pose.position.z == pytest.approx(start.position.z + 0.02 * 7 * DT, abs=1e-12)
    assert pose.yaw == pytest.approx(0.3 * 7 * DT, abs=1e-12)


def test_stage_step_limit_and_reset():
    sim = TabletopSim(_mini_scene([]))
    for _ in range(100):
        sim.step(Action())
    with pytest.raises(StageStepLimitExceeded):
        sim.step(Action())
    sim.reset_to_neutral()
    assert sim.stage_steps == 0 and sim.stage_index == 1
    assert sim.gripper_pose().position == Point3(*sim.scene.gripper.neutral[:3])
    sim.step(Action())  # fresh budget


def test_reset_to_neutral_keeps_attachment():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    assert sim.attached_object == "bar"
    sim.reset_to_neutral()
    assert sim.attached_object == "bar"
    gx, gy, _, _ = sim.scene.gripper.neutral
    bx, by, _, _ = sim.object_pose("bar")
    assert (bx, by) == pytest.approx((gx, gy), abs=1e-9)


def test_control_rate_must_be_positive():
    with pytest.raises(ConsistencyViolation):
        TabletopSim(_mini_scene([]), control_rate_hz=0.0)


# ---------------------------------------------------------------------------
# Grasping
# ---------------------------------------------------------------------------


def test_attach_requires_closing_over_graspable_chord():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    assert sim.attached_object == "bar"


def test_attach_rejects_wide_or_offcenter_or_high_or_heavy():
    wide = ObjectSpec(name="wide", footprint=rectangle(0.1, 0.1), height=0.03, x=0.0, y=0.0)
    heavy = ObjectSpec(
        name="anvil", footprint=rectangle(0.04, 0.04), height=0.03, x=0.3, y=0.0,
        mass_class="heavy",
    )
    thin = ObjectSpec(name="thin", footprint=rectangle(0.02, 0.1), height=0.03, x=-0.3, y=0.0)
    sim = TabletopSim(_mini_scene([wide, heavy, thin]))

    _grasp_at(sim, 0.0, 0.0, 0.03)  # 0.1 m chord exceeds the 0.085 m jaw span
    assert sim.attached_object is None

    sim.reset_to_neutral()
    sim.step(Action(gripper=0.085))
    _grasp_at(sim, 0.3, 0.0, 0.03)  # graspable size but heavy
    assert sim.attached_object is None

    sim.reset_to_neutral()
    sim.step(Action(gripper=0.085))
    _grasp_at(sim, -0.285, 0.0, 0.03)  # palm 15 mm off the chord midpoint
    assert sim.attached_object is None

    sim.reset_to_neutral()
    sim.step(Action(gripper=0.085))
    _drive(sim, -0.3, 0.0, 0.1, steps=10)
    sim.step(Action(gripper=0.0))  # closing 0.06 m above the top face
    assert sim.attached_object is None

    sim.reset_to_neutral()
    sim.step(Action(gripper=0.085))
    _grasp_at(sim, -0.3, 0.0, 0.03)
    assert sim.attached_object == "thin"


def test_attached_object_follows_se2_and_height():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    # Translate, lift, and rotate; the bar must follow rigidly.
    sim.step(Action(vx=0.5, vy=0.25, vz=0.3, wz=math.pi / 4 / DT, gripper=0.0))
    bx, by, byaw, bz = sim.object_pose("bar")
    pose = sim.gripper_pose()
    assert (bx, by) == pytest.approx((pose.position.x, pose.position.y), abs=1e-9)
    assert byaw == pytest.approx(math.pi / 4, abs=1e-9)
    assert bz == pytest.approx(0.3 * DT, abs=1e-9)  # dz above the table

    sim.step(Action(vz=-2.0, gripper=0.0))  # push down past the table
    assert sim.object_pose("bar")[3] == 0.0  # base never goes below the table


def test_release_drops_object_in_place():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    _drive(sim, 0.2, 0.1, 0.15, steps=10, grip=0.0)
    sim.step(Action(gripper=0.085))
    assert sim.attached_object is None
    bx, by, _, bz = sim.object_pose("bar")
    assert (bx, by) == pytest.approx((0.2, 0.1), abs=1e-9)
    assert bz == 0.0
    # Moving away no longer carries the bar.
    _drive(sim, 0.4, 0.1, 0.3, steps=5)
    assert sim.object_pose("bar")[0] == pytest.approx(0.2, abs=1e-9)


# ---------------------------------------------------------------------------
# Pushing
# ---------------------------------------------------------------------------


def test_gripper_pushes_light_object_by_exact_displacement():
    block = ObjectSpec(name="block", footprint=rectangle(0.05, 0.05), height=0.025, x=0.0, y=0.0)
    sim = TabletopSim(_mini_scene([block]))
    _drive(sim, -0.05, 0.0, 0.02, steps=20)
    sim.stage_steps = 0
    x_before = sim.object_pose("block")[0]
    for _ in range(10):
        sim.step(Action(vx=0.1))
    x_after = sim.object_pose("block")[0]
    moved = x_after - x_before
    # Contact began partway through; once touching, every step's 0.02 m
    # displacement transfers exactly.
    assert moved > 0.05
    assert (moved / 0.02) == pytest.approx(round(moved / 0.02), abs=1e-9)
    assert sim.gripper_pose().position.x == pytest.approx(0.15, abs=1e-9)


def test_push_is_height_gated_and_ignores_heavy():
    block = ObjectSpec(name="block", footprint=rectangle(0.05, 0.05), height=0.025, x=0.0, y=0.0)
    anvil = ObjectSpec(
        name="anvil", footprint=rectangle(0.05, 0.05), height=0.025, x=0.0, y=0.2,
        mass_class="heavy",
    )
    sim = TabletopSim(_mini_scene([block, anvil]))
    _drive(sim, -0.2, 0.0, 0.2, steps=10)
    sim.stage_steps = 0
    for _ in range(20):
        sim.step(Action(vx=0.15))  # flies over at z=0.2
    assert sim.object_pose("block")[0] == 0.0

    sim.reset_to_neutral()
    _drive(sim, -0.2, 0.2, 0.02, steps=10)
    sim.stage_steps = 0
    for _ in range(20):
        sim.step(Action(vx=0.15))  # plows straight through the heavy object
    assert sim.object_pose("anvil")[0] == 0.0


def test_carried_object_acts_as_pusher():
    sim = TabletopSim(build_sweep_fixture())
    _grasp_at(sim, -0.3, 0.0, 0.04)
    _drive(sim, 0.45, 0.0, 0.03, steps=40, grip=0.0)
    assert sim.object_pose("block")[0] > 0.3
    report = evaluate_all_goals(sim)[0]
    assert report.success


def test_pushed_object_stays_on_table():
    block = ObjectSpec(name="block", footprint=rectangle(0.05, 0.05), height=0.025, x=0.5, y=0.0)
    sim = TabletopSim(_mini_scene([block]))
    _drive(sim, 0.45, 0.0, 0.02, steps=20)
    sim.stage_steps = 0
    for _ in range(30):
        sim.step(Action(vx=0.15))
    cx, _ = sim.object_world_centroid("block")
    assert cx <= TABLE_BOUNDS[2] - 0.01 + 1e-9


# ---------------------------------------------------------------------------
# Articulation
# ---------------------------------------------------------------------------


def _button_scene():
    return _mini_scene(
        [
            ObjectSpec(
                name="button", footprint=rectangle(0.04, 0.04), height=0.035,
                x=0.0, y=0.0, mass_class="heavy",
                articulation=ArticulationSpec(
                    kind="button", region=Region(-0.03, -0.03, 0.03, 0.03), z_max=0.04
                ),
            )
        ]
    )


def test_button_latches_on_descent_inside_region():
    sim = TabletopSim(_button_scene())
    _drive(sim, 0.0, 0.0, 0.1, steps=10)
    assert sim.articulation_value("button") == 0.0
    _drive(sim, 0.0, 0.0, 0.035, steps=4)
    assert sim.articulation_value("button") == 1.0
    _drive(sim, 0.0, 0.0, 0.2, steps=4)
    assert sim.articulation_value("button") == 1.0  # latched


def test_button_ignores_descent_outside_region_and_lateral_entry():
    sim = TabletopSim(_button_scene())
    _drive(sim, 0.2, 0.0, 0.02, steps=20)  # descend far away
    assert sim.articulation_value("button") == 0.0
    _drive(sim, 0.0, 0.0, 0.02, steps=10)  # slide in below the trigger height
    assert sim.articulation_value("button") == 0.0


def _slide_scene(z_max=0.05):
    return _mini_scene(
        [
            ObjectSpec(
                name="tray", footprint=rectangle(0.2, 0.1), height=0.02,
                x=0.0, y=0.0, mass_class="heavy",
                articulation=ArticulationSpec(
                    kind="slide", region=Region(-0.1, -0.05, 0.1, 0.05),
                    direction=(1.0, 0.0), travel=0.06, z_max=z_max,
                ),
            )
        ]
    )


def test_slide_ratchets_forward_only_and_clamps():
    sim = TabletopSim(_slide_scene())
    _drive(sim, -0.08, 0.0, 0.03, steps=20)
    sim.stage_steps = 0
    sim.step(Action(vx=0.1))  # +0.02 toward the axis
    assert sim.articulation_value("tray") == pytest.approx(0.02 / 0.06, abs=1e-9)
    sim.step(Action(vx=-0.1))  # backward motion must not rewind
    assert sim.articulation_value("tray") == pytest.approx(0.02 / 0.06, abs=1e-9)
    for _ in range(6):
        sim.step(Action(vx=0.1))
    assert sim.articulation_value("tray") == 1.0


def test_slide_requires_vertical_engagement():
    sim = TabletopSim(_slide_scene(z_max=0.05))
    _drive(sim, -0.08, 0.0, 0.3, steps=10)
    sim.stage_steps = 0
    for _ in range(5):
        sim.step(Action(vx=0.1))  # sweeping high above the trigger band
    assert sim.articulation_value("tray") == 0.0


def test_carried_object_engages_slide():
    objects = [
        ObjectSpec(name="plug", footprint=rectangle(0.03, 0.02), height=0.02, x=-0.3, y=0.0),
        ObjectSpec(
            name="socket", footprint=rectangle(0.06, 0.06), height=0.02,
            x=0.0, y=0.0, mass_class="heavy",
            articulation=ArticulationSpec(
                kind="slide", region=Region(-0.05, -0.05, 0.05, 0.05),
                direction=(1.0, 0.0), travel=0.04, z_max=0.06,
            ),
        ),
    ]
    sim = TabletopSim(_mini_scene(objects))
    _grasp_at(sim, -0.3, 0.0, 0.02)
    assert sim.attached_object == "plug"
    _drive(sim, 0.1, 0.0, 0.03, steps=30, grip=0.0)  # drag the plug across
    assert sim.articulation_value("socket") == 1.0


# ---------------------------------------------------------------------------
# Contacts and predicates
# ---------------------------------------------------------------------------


def test_contact_history_records_persistent_overlap():
    sim = TabletopSim(build_sweep_fixture())
    assert not sim.contact_seen("bar", "gripper")
    _grasp_at(sim, -0.3, 0.0, 0.04)
    assert sim.contact_seen("bar", "gripper")
    assert sim.contact_seen("gripper", "bar")  # order-insensitive


def test_predicates_all_kinds():
    sim = TabletopSim(build_sweep_fixture())
    inside = Predicate(kind="inside_region", obj="bar", region=Region(-0.4, -0.1, -0.2, 0.1))
    outside = Predicate(kind="inside_region", obj="bar", region=Region(0.2, -0.1, 0.4, 0.1))
    displaced = Predicate(kind="displaced_beyond", obj="bar", distance=0.05)
    contact = Predicate(kind="contact_made", obj="bar", partner="gripper")
    assert evaluate_predicate(sim, inside)
    assert not evaluate_predicate(sim, outside)
    assert not evaluate_predicate(sim, displaced)
    assert not evaluate_predicate(sim, contact)

    _grasp_at(sim, -0.3, 0.0, 0.04)
    _drive(sim, -0.2, 0.0, 0.1, steps=10, grip=0.0)
    assert evaluate_predicate(sim, displaced)
    assert evaluate_predicate(sim, contact)

    report = evaluate_group(sim, (displaced, contact, outside))
    assert not report.success
    assert [ok for _, ok in report.lines] == [True, True, False]


def test_articulation_predicate_tolerance():
    sim = TabletopSim(_slide_scene())
    _drive(sim, -0.08, 0.0, 0.03, steps=20)
    sim.stage_steps = 0
    sim.step(Action(vx=0.1))
    partial = Predicate(kind="articulation_at", obj="tray", value=0.02 / 0.06, tol=0.01)
    full = Predicate(kind="articulation_at", obj="tray", value=1.0)
    assert evaluate_predicate(sim, partial)
    assert not evaluate_predicate(sim, full)


# ---------------------------------------------------------------------------
# Determinism and serialization
# ---------------------------------------------------------------------------


def _random_actions(seed, n=60):
    rng = np.random.default_rng(seed)
    actions = []
    for i in range(n):
        actions.append(
            Action(
                vx=float(rng.uniform(-0.15, 0.15)),
                vy=float(rng.uniform(-0.15, 0.15)),
                vz=float(rng.uniform(-0.1, 0.1)),
                wz=float(rng.uniform(-1.0, 1.0)),
                gripper=0.0 if i % 17 == 5 else 0.085,
            )
        )
    return actions


def test_identical_action_streams_give_identical_states():
    actions = _random_actions(11)
    states = []
    for _ in range(2):
        sim = TabletopSim(build_scene("table_wiping", seed=7))
        trace = []
        for i, action in enumerate(actions):
            if i % 50 == 0:
                sim.reset_to_neutral()
            sim.step(action)
            trace.append(json.dumps(sim.state_dict(), sort_keys=True))
        states.append(trace)
    assert states[0] == states[1]


def test_state_dict_json_round_trip_is_exact():
    sim = TabletopSim(build_scene("gift_prep", seed=1))
    for action in _random_actions(3, n=30):
        sim.step(action)
    state = sim.state_dict()
    assert json.loads(json.dumps(state)) == state


# ---------------------------------------------------------------------------
# Scene library
# ---------------------------------------------------------------------------


def test_scene_builders_cover_four_families():
    assert sorted(SCENE_BUILDERS) == [
        "gift_prep",
        "laptop_packing",
        "table_wiping",
        "watch_cleaning",
    ]


@pytest.mark.parametrize("family", sorted(SCENE_BUILDERS))
def test_scenes_valid_across_jitter_seeds(family):
    canonical = build_scene(family)
    for seed in range(20):
        scene = build_scene(family, seed=seed)
        assert scene.family == family
        assert len(scene.objects) == len(canonical.objects)
        for obj, base in zip(scene.objects, canonical.objects):
            assert obj.name == base.name
            limit = 0.0151 if base.mass_class == "light" else 0.0081
            # The laptop scene treats all items as anchors.
            if family == "laptop_packing":
                limit = 0.0081
            assert abs(obj.x - base.x) <= limit
            assert abs(obj.y - base.y) <= limit
            world = transform_polygon(obj.footprint, obj.x, obj.y, obj.yaw)
            assert world[:, 0].min() >= scene.table[0]
            assert world[:, 0].max() <= scene.table[2]
            assert world[:, 1].min() >= scene.table[1]
            assert world[:, 1].max() <= scene.table[3]
        assert len(scene.subtask_goals) == 2


def test_same_seed_reproduces_scene_and_seeds_differ():
    a = build_scene("watch_cleaning", seed=4)
    b = build_scene("watch_cleaning", seed=4)
    c = build_scene("watch_cleaning", seed=5)
    assert a.to_json_dict() == b.to_json_dict()
    assert a.to_json_dict() != c.to_json_dict()


def test_packaged_scenes_match_builders():
    for family in SCENE_BUILDERS:
        packaged = load_packaged_scene(family)
        assert packaged.to_json_dict() == build_scene(family).to_json_dict()
    with pytest.raises(ConfigError):
        load_packaged_scene("no_such_scene")


def test_scene_spec_json_round_trip(tmp_path):
    scene = build_scene("laptop_packing", seed=9)
    path = tmp_path / "scene.json"
    scene.save(path)
    assert SceneSpec.load(path).to_json_dict() == scene.to_json_dict()


def test_scene_rejects_duplicate_names_and_unknown_goal_objects():
    slab = ObjectSpec(name="slab", footprint=rectangle(0.1, 0.1), height=0.02, x=0.0, y=0.0)
    with pytest.raises(ConsistencyViolation):
        _mini_scene([slab, slab])
    with pytest.raises(ConsistencyViolation):
        _mini_scene(
            [slab],
            goals=((Predicate(kind="displaced_beyond", obj="ghost", distance=0.1),),),
        )


def test_unknown_family_raises_config_error():
    with pytest.raises(ConfigError):
        build_scene("juggling")


def test_tile_center_matches_grid_math():
    assert tile_center(0, 2) == pytest.approx((-0.512, -0.192))
    assert tile_center(2, 3) == pytest.approx((0.0, 0.0))
    assert tile_center(4, 5) == pytest.approx((0.512, 0.384))
