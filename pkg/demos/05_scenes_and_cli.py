# %% [markdown]
# # Scene files and the command line
#
# Scenes declare a chart and named operators; every engine capability has a
# subcommand.

# %%
import subprocess
import sys
from pathlib import Path

from torsionlab import format_scene, parse_scene

scenes = Path(__file__).resolve().parents[1] / "scenes"
scene = parse_scene((scenes / "diagonal.tl").read_text())
print(format_scene(scene))


# %%
def tl(*args):
    cmd = [sys.executable, "-m", "torsionlab.cli", *args]
    print("$ torsionlab", " ".join(args))
    print(subprocess.run(cmd, capture_output=True, text=True).stdout)


tl("nijenhuis", str(scenes / "diagonal.tl"), "--operator", "A")
tl("check-module", str(scenes / "diagonal.tl"), "--operators", "A,B", "--level", "2")
tl("polarize", str(scenes / "generic.tl"), "--level", "1", "--operators", "A,B", "--machine")
tl("verify-identities", str(scenes / "jordan3.tl"), "--seed", "7")
