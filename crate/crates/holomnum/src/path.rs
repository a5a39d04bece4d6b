pub struct EvalOptions;
pub struct Path;
pub struct TransitionMatrix;
pub fn numerical_solution() {}
pub fn numerical_transition_matrix() {}
