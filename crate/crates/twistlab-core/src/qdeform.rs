//! q-deformation module (under construction).
