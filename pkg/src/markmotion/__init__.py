"""markmotion: mark-based visual prompting of a VLM compiled into tabletop manipulation.

The package turns an instruction plus a top-down observation into executable
gripper motion in four moves: annotate the image with candidate keypoints and
a lettered grid, ask a vision-language model to pick points and tiles, lift
the picks into 3D affordances, and compile those into a twist-level trajectory
that a deterministic 2.5D tabletop simulator can execute and score.
"""

__version__ = "0.1.0"
