"""Mark a tabletop scene the way the pipeline shows it to the model.

Renders a simulated observation, segments the objects of interest, scatters
labeled keypoint candidates over them, overlays the coordinate grid, and
saves the annotated image. The model never sees raw coordinates: it answers
by naming these marks (``P3``, ``Q7``) and grid tiles (``c2``), which is what
makes its answers checkable.

Run: python3 demos/01_annotate_scene.py
"""

from pathlib import Path

from markmotion.geometry import write_rgb_png
from markmotion.marks import render_marks
from markmotion.pipeline.runner import build_dual_markset, build_role_markset
from markmotion.pipeline.segmentation import GroundTruthSegmenter
from markmotion.sim.engine import TabletopSim
from markmotion.sim.scenes import SCENE_BUILDERS

OUT = Path(__file__).parent / "output" / "annotate_scene"


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    scene = SCENE_BUILDERS["table_wiping"](seed=0)
    sim = TabletopSim(scene)
    observation = sim.observe(include_gripper=False)
    write_rgb_png(observation.rgb, OUT / "initial.png")
    print(f"scene: {scene.name!r} — {scene.instruction!r}")
    print(f"objects: {sorted(observation.masks)}")
    print(f"wrote {OUT / 'initial.png'}")

    # Role-specific annotation, as used after task decomposition: P marks on
    # the object to hold (broom), Q marks on the object acted upon (trash).
    masks = GroundTruthSegmenter().segment(observation, ["broom", "trash"])
    markset, label_to_object = build_role_markset(
        masks, grasped="broom", unattached="trash", image_size=scene.image_size
    )
    annotated = render_marks(observation.rgb, markset)
    annotated.save(OUT / "annotated_roles.png", OUT / "markset_roles.json")
    print(f"\nrole annotation: {len(markset.candidates)} marks "
          f"({OUT / 'annotated_roles.png'})")
    for cand in markset.candidates:
        pixel = cand.pixel
        print(f"  {cand.label:>3}  ({pixel.u:4d},{pixel.v:4d})  "
              f"{cand.role:<10} {cand.source:<8} -> {label_to_object[cand.label]}")

    grid = markset.grid
    print(f"\ngrid: {len(grid.all_tiles())} tiles, columns "
          f"{'/'.join(grid.column_names())} left to right, rows "
          f"{'/'.join(grid.row_names())} bottom to top")

    # Dual annotation, as used when decomposition is disabled: every object
    # carries marks in both roles, so one flat query can pick anything.
    all_names = sorted(observation.masks)
    masks = GroundTruthSegmenter().segment(observation, all_names)
    dual_markset, _ = build_dual_markset(masks, all_names, scene.image_size)
    render_marks(observation.rgb, dual_markset).save(OUT / "annotated_all.png")
    print(f"\ndual annotation: {len(dual_markset.candidates)} marks on "
          f"{len(all_names)} objects ({OUT / 'annotated_all.png'})")


if __name__ == "__main__":
    main()
