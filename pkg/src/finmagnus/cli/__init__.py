"""Group-expression language and the ``magnus`` command."""
