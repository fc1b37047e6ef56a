"""Hardware-free control stack for the Jenny 5 robot.

Subpackages
-----------
scufy     -- wire-level encoder/decoder for the `#`-terminated serial grammar
firmware  -- virtual Scufy board: controllers, motion integration, transports
host      -- PC-side client: commands out, event queue in
roboclaw  -- packetized motor-board client and emulator
model     -- drivetrain torque/speed arithmetic and named robot constants
teleop    -- WebSocket teleoperation service over the simulators
"""

__version__ = "0.1.0"
