# Инициализация пакета logic
