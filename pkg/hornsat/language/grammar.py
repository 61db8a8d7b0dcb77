"""Lark grammar of the `.hsl` input language (see docs/grammar.md)."""

GRAMMAR = r"""
start: declaration* process_decl?

?declaration: type_decl
            | fun_decl
            | const_decl
            | reduc_decl
            | free_decl
            | pred_decl
            | event_decl
            | clauses_decl
            | macro_decl
            | statement

type_decl: "type" NAME "."
fun_decl: "fun" NAME "(" [name_list] ")" ":" NAME [options] "."
const_decl: "const" NAME ":" NAME [options] "."
reduc_decl: "reduc" rewrite ("otherwise" rewrite)* "."
rewrite: [forall] term "=" term
free_decl: "free" name_list ":" NAME [options] "."
pred_decl: "pred" NAME ["(" [name_list] ")"] [options] "."
event_decl: "event" NAME ["(" [name_list] ")"] "."
clauses_decl: "clauses" user_clause (";" user_clause)* "."
user_clause: [forall] literals "->" literal   -> implication
           | [forall] literal                 -> fact_clause
macro_decl: "let" NAME ["(" [binders] ")"] "=" process "."

statement: statement_kind [binders ";"] literals ["==>" conclusion] [options] "."
!statement_kind: "query" | "lemma" | "axiom"
conclusion: conjunction ("||" conjunction)*
conjunction: literals
           | "false"                          -> false_conjunction

forall: "forall" binders ";"
binders: binder_group ("," binder_group)*
binder_group: NAME ("," NAME)* ":" NAME
name_list: NAME ("," NAME)*

options: "[" option ("," option)* "]"
option: NAME ["=" NAME]
      | "axiom"                              -> axiom_option

literals: literal ("&&" literal)*
literal: term                                -> fact_literal
       | "event" "(" term ")"                -> event_literal
       | term "=" term                       -> eq_literal
       | term "<>" term                      -> neq_literal
       | term "<" term                       -> lt_literal
       | term "<=" term                      -> le_literal

process_decl: "process" process

?process: seq_process
        | seq_process "|" process            -> parallel

?seq_process: "0"                                            -> nil
            | "(" process ")"
            | "!" seq_process                                -> replication
            | "new" NAME ":" NAME continuation               -> restriction
            | "in" "(" term "," pattern ")" continuation     -> input
            | "out" "(" term "," term ")" continuation       -> output
            | "event" NAME ["(" [terms] ")"] continuation    -> event_process
            | "let" pattern "=" term "in" process else_branch -> let_process
            | "let" binders "suchthat" term "in" process else_branch -> suchthat_process
            | "if" term "=" term "then" process else_branch  -> if_equal
            | "if" term "then" process else_branch           -> if_predicate
            | NAME ["(" [terms] ")"]                         -> macro_call

continuation: [";" process]
else_branch: ["else" process]

pattern: NAME                                -> pattern_var
       | NAME ":" NAME                       -> pattern_typed
       | "=" term                            -> pattern_equal
       | "(" [patterns] ")"                  -> pattern_tuple
       | NAME "(" [patterns] ")"             -> pattern_data
patterns: pattern ("," pattern)*

?term: simple_term
     | simple_term "+" NUMBER                -> plus
?simple_term: NAME                           -> ident
            | NAME "(" [terms] ")"           -> apply
            | "(" [terms] ")"                -> tuple
            | NUMBER                         -> number
            | "0"                            -> zero
terms: term ("," term)*

NAME: /[A-Za-z_][A-Za-z0-9_']*/
NUMBER: /[0-9]+/
COMMENT: /\(\*[\s\S]*?\*\)/

%import common.WS
%ignore WS
%ignore COMMENT
"""
