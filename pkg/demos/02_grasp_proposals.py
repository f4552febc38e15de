"""Propose parallel-jaw grasps from depth and pick the one a model asked for.

The model only points at a pixel ("grasp near mark P4"); turning that into a
gripper pose is classical geometry. This script samples antipodal contact
pairs on an object's boundary — normals opposed within the friction cone,
separation within the jaw aperture — then selects the proposal nearest the
predicted point and draws the winning contact pair.

Run: python3 demos/02_grasp_proposals.py
"""

from pathlib import Path

import numpy as np

from markmotion.geometry import write_rgb_png
from markmotion.geometry.camera import deproject, project
from markmotion.geometry.grasping import nearest_grasp, sample_antipodal_grasps
from markmotion.pipeline.segmentation import GroundTruthSegmenter
from markmotion.sim.engine import TabletopSim
from markmotion.sim.scenes import SCENE_BUILDERS

OUT = Path(__file__).parent / "output" / "grasp_proposals"


def _stamp(image: np.ndarray, u: float, v: float, color, half: int = 3) -> None:
    h, w = image.shape[:2]
    u0, v0 = int(round(u)), int(round(v))
    image[max(0, v0 - half) : min(h, v0 + half + 1),
          max(0, u0 - half) : min(w, u0 + half + 1)] = color


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    scene = SCENE_BUILDERS["table_wiping"](seed=0)
    sim = TabletopSim(scene)
    observation = sim.observe(include_gripper=False)
    mask = GroundTruthSegmenter().segment(observation, ["broom"])["broom"]

    proposals = sample_antipodal_grasps(
        observation.depth, mask, scene.camera, n=30, seed=0
    )
    widths = [p.width for p in proposals]
    print(f"{len(proposals)} proposals on the broom handle")
    print(f"jaw width:  {min(widths) * 1000:.1f}-{max(widths) * 1000:.1f} mm "
          f"(aperture limit 85.0 mm)")
    print(f"quality:    {min(p.quality for p in proposals):.4f}-"
          f"{max(p.quality for p in proposals):.4f} "
          f"(cosine of contact-normal opposition)")

    # Pretend the model pointed at the middle of the handle: lift that pixel
    # to 3D and take the nearest proposal.
    vs, us = np.nonzero(mask.bits)
    pick = np.argsort(us)[len(us) // 2]
    from markmotion.geometry import Pixel

    pointed_pixel = Pixel(int(us[pick]), int(vs[pick]))
    depth_value = float(observation.depth.data[pointed_pixel.v, pointed_pixel.u])
    predicted = deproject(pointed_pixel, depth_value, scene.camera, world=True)
    chosen = nearest_grasp(proposals, predicted)
    print(f"\npredicted grasp point: ({predicted.x:+.3f}, {predicted.y:+.3f}, "
          f"{predicted.z:+.3f}) m")
    print(f"chosen grasp center:   ({chosen.center.x:+.3f}, {chosen.center.y:+.3f}, "
          f"{chosen.center.z:+.3f}) m, yaw {chosen.yaw:+.2f} rad, "
          f"width {chosen.width * 1000:.1f} mm")

    image = observation.rgb.copy()
    for p in proposals:
        for contact in p.contacts:
            px = project(contact, scene.camera, world=True)
            _stamp(image, px.u, px.v, (60, 60, 220), half=1)
    for contact in chosen.contacts:
        px = project(contact, scene.camera, world=True)
        _stamp(image, px.u, px.v, (255, 40, 40), half=3)
    _stamp(image, pointed_pixel.u, pointed_pixel.v, (255, 220, 0), half=2)
    write_rgb_png(image, OUT / "proposals.png")
    print(f"\nwrote {OUT / 'proposals.png'} (blue: all contact pairs, "
          f"red: chosen pair, yellow: predicted point)")


if __name__ == "__main__":
    main()
